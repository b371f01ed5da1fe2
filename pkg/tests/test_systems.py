import pytest

from deontic import (
    FrameProperty, SystemRegistry, entailment_closure, frame_class,
    inclusion_report,
)
from deontic.systems import BASE_RULES, SCHEMAS


@pytest.fixture
def registry():
    return SystemRegistry.standard()


class TestGetSystem:
    def test_guarded_axiom_system(self, registry):
        d = registry.get("FCP_2")
        assert set(d.axioms) == {"D_s", "D_w", "AFCP_O", "AFCP_P"}
        assert d.rules == BASE_RULES

    def test_minimal_classical_system(self, registry):
        d = registry.get("E")
        assert d.axioms == ()
        assert d.rules == {"MP", "Taut", "RE_O", "RE_Ps"}

    def test_monotone_system_admits_rm(self, registry):
        d = registry.get("FCP_6")
        assert set(d.axioms) >= {"AFCP_O", "AFCP2_P", "M_O", "M_Ps"}
        assert d.admits_rm("O") and d.admits_rm("Ps") and d.admits_rm("Pw")
        assert not registry.get("FCP_2").admits_rm("O")

    def test_rule_systems(self, registry):
        assert registry.get("FCP_1").rules == BASE_RULES | {"IFCP_O", "IFCP_P"}
        assert registry.get("FCP_5").rules == BASE_RULES | {"IFCP_O", "IFCP2_P"}

    def test_unknown_system(self, registry):
        with pytest.raises(ValueError, match="unknown system"):
            registry.get("FCP_99")


class TestDefineSystem:
    def test_diagnostic_registration(self, registry):
        d = registry.define("EXPLOSION_DEMO", axioms=["FCP"], rules=["RM_Ps"])
        assert d.rules >= BASE_RULES | {"RM_Ps"}
        assert registry.get("EXPLOSION_DEMO") is d
        assert d.frame_class is None

    def test_duplicate_name(self, registry):
        with pytest.raises(ValueError, match="already defined"):
            registry.define("E")

    def test_unknown_axiom(self, registry):
        with pytest.raises(ValueError, match="unknown axiom"):
            registry.define("BROKEN", axioms=["X9"])

    def test_unknown_rule(self, registry):
        with pytest.raises(ValueError, match="unknown inference rule"):
            registry.define("BROKEN", rules=["R_weird"])


class TestFrameClass:
    def test_minimal(self):
        assert frame_class("Min") == {FrameProperty.PS_COHERENT, FrameProperty.PW_COHERENT}

    def test_unconstrained(self):
        assert frame_class("E") == frozenset()

    def test_supplemented_variant(self):
        assert frame_class("FCP_3") == frame_class("FCP_2") | {FrameProperty.P_SUPPLEMENTED}
        assert frame_class("FCP_6") == frame_class("FCP_5") | {FrameProperty.P_SUPPLEMENTED}

    def test_rule_variants(self):
        assert frame_class("FCP_1") == frame_class("Min") | {
            FrameProperty.IFCP_O, FrameProperty.IFCP_P
        }
        assert frame_class("FCP_4") == frame_class("Min") | {
            FrameProperty.AFCP_O, FrameProperty.AFCP2_P
        }

    def test_user_system_has_no_class(self):
        with pytest.raises(ValueError, match="built-in"):
            frame_class("EXPLOSION_DEMO")


class TestInclusionReport:
    def test_exactly_seven_strict_inclusions(self):
        facts = inclusion_report()
        pairs = {(f.smaller, f.larger) for f in facts}
        assert pairs == {
            ("FCP_2", "FCP_1"),
            ("FCP_1", "FCP_3"),
            ("FCP_3", "FCP_6"),
            ("FCP_2", "FCP_4"),
            ("FCP_4", "FCP_5"),
            ("FCP_1", "FCP_5"),
            ("FCP_5", "FCP_6"),
        }

    def test_every_fact_has_derivation_evidence(self):
        for fact in inclusion_report():
            assert fact.derivation_scripts

    def test_fixture_evidence_where_supplied(self):
        by_pair = {(f.smaller, f.larger): f for f in inclusion_report()}
        assert by_pair[("FCP_2", "FCP_1")].strictness_fixture == "corollary3_model1"
        assert by_pair[("FCP_4", "FCP_5")].strictness_fixture == "corollary3_model2"

    def test_antitone_frame_classes(self):
        for fact in inclusion_report():
            small = entailment_closure(frame_class(fact.smaller))
            large = entailment_closure(frame_class(fact.larger))
            assert large >= small, (fact.smaller, fact.larger)


def test_schema_inventory_is_pure():
    from deontic import atoms

    for name, sch in SCHEMAS.items():
        assert atoms(sch.body) <= sch.metavars, name
