import copy
import json

import pytest

from drinfeld.errors import ConfigurationTooLarge
from drinfeld.verify import (
    VerificationConfig,
    VerificationReport,
    default_bundle,
    merge_reports,
    reevaluate,
    run_suites,
    verify_compatibility,
    verify_congruences,
    verify_det_representation,
    verify_f_identities,
    verify_leading_term,
    verify_pairing_properties,
)

SMALL_F = VerificationConfig(p=2, max_deg=2)
PAIR_I = VerificationConfig(p=2, theta=1, g=(1, 1), a_list=((0, 1),),
                            ab_pairs=(((0, 1), (0, 1)),))
DET_Q3 = VerificationConfig(p=3, theta=2, g=(1, 1), a_list=((0, 1),))


def _strip_millis(report_json):
    cleaned = copy.deepcopy(report_json)
    for check in cleaned["checks"]:
        check.pop("millis", None)
    return cleaned


def test_f_suite_passes_and_counts():
    report = verify_f_identities(SMALL_F)
    assert report.ok()
    # every check name carries the configuration that produced it
    assert all("[q=2" in c.name for c in report.checks)


def test_r1_grid_is_all_ones():
    cfg = VerificationConfig(p=3, ranks=(1,), max_deg=2)
    report = verify_f_identities(cfg)
    assert report.ok()
    const_checks = [c for c in report.checks if "closed_form.const_one" in c.name]
    assert len(const_checks) == 12  # every monic a of degree 1 and 2


def test_congruence_suite_passes():
    assert verify_congruences(SMALL_F).ok()


def test_congruence_r1_vacuous():
    cfg = VerificationConfig(p=2, ranks=(1,), max_deg=1)
    report = verify_congruences(cfg)
    assert report.ok()
    assert any("exchange" in c.name and c.status == "pass" for c in report.checks)


def test_pairing_suite_passes():
    assert verify_pairing_properties(PAIR_I).ok()


def test_compat_suite_passes():
    assert verify_compatibility(PAIR_I).ok()


def test_det_suite_passes():
    assert verify_det_representation(PAIR_I).ok()
    assert verify_det_representation(DET_Q3).ok()


def test_leading_suite_skips_rank1_split():
    cfg = VerificationConfig(p=2, theta=1, g=(1,), a_list=((0, 1), (1, 1, 1)))
    report = verify_leading_term(cfg)
    assert report.ok()
    assert any(c.status == "skipped" for c in report.checks)


def test_leading_records_scalar_for_nonrational_top_coefficient():
    cfg = VerificationConfig(p=2, k_extensions=(2,), theta=[0, 1],
                             g=(1, [0, 1]), a_list=((0, 1, 1),))
    report = verify_leading_term(cfg)
    assert report.ok()
    split = next(c for c in report.checks if "split" in c.name)
    assert split.details is not None and "observed_c" in split.details
    assert split.details["asserted"] is False


def test_budget_guard():
    tiny = VerificationConfig(p=2, theta=1, g=(1, 1), a_list=((0, 1),), budget=10)
    with pytest.raises(ConfigurationTooLarge):
        verify_pairing_properties(tiny)


def test_mutation_flip_coefficient_detected():
    report = verify_f_identities(SMALL_F, fault="flip_fa_coefficient")
    fails = report.failures()
    assert fails
    for entry in fails:
        assert entry.counterexample is not None
    sample = next(
        c for c in fails if c.counterexample["identity"] == "f_chain_eq_recursive"
    )
    assert reevaluate(sample.counterexample)


def test_mutation_fa_plus_t1_detected():
    report = verify_congruences(SMALL_F, fault="fa_plus_T1")
    fails = report.failures()
    assert fails and all(c.counterexample for c in fails)
    assert any("exchange" in c.name for c in fails)


def test_mutation_psi_sign_detected_in_odd_characteristic():
    report = verify_pairing_properties(DET_Q3, fault="psi_sign")
    fails = report.failures()
    assert fails and all(c.counterexample for c in fails)
    multi = [c for c in fails if "multilinear" in c.name]
    assert multi, "dropping the sign must break linearity in even rank"
    assert reevaluate(multi[0].counterexample)


def test_mutation_psi_sign_invisible_in_char2():
    # (-1)**(r-1) = 1 in characteristic 2, so the faulty module is the
    # correct one and nothing can fail
    report = verify_pairing_properties(PAIR_I, fault="psi_sign")
    assert report.ok()


def test_mutation_fab_product_detected():
    report = verify_compatibility(PAIR_I, fault="fab_product")
    fails = report.failures()
    assert fails and fails[0].counterexample["identity"] == "compatibility"
    assert reevaluate(fails[0].counterexample)


def test_reports_reproducible_modulo_timing():
    r1 = verify_pairing_properties(PAIR_I)
    r2 = verify_pairing_properties(PAIR_I)
    assert _strip_millis(r1.to_json()) == _strip_millis(r2.to_json())
    f1 = verify_f_identities(VerificationConfig(p=2, max_deg=1, seed=9))
    f2 = verify_f_identities(VerificationConfig(p=2, max_deg=1, seed=9))
    assert _strip_millis(f1.to_json()) == _strip_millis(f2.to_json())


def test_report_json_schema():
    report = verify_pairing_properties(PAIR_I)
    obj = report.to_json()
    assert set(obj) == {"config_digest", "checks"}
    assert obj["config_digest"] == PAIR_I.digest()
    for check in obj["checks"]:
        assert {"name", "status", "millis"} <= set(check)
        assert check["status"] in ("pass", "fail", "skipped")
    blob = json.dumps(obj)
    assert json.loads(blob) == obj


def test_config_json_roundtrip_and_digest():
    cfg = VerificationConfig(
        p=2, k_extensions=(2,), theta=[0, 1], g=(1, [0, 1]),
        a_list=((0, 1),), ab_pairs=(((0, 1), (1, 1, 1)),), seed=7,
    )
    again = VerificationConfig.from_json(cfg.to_json())
    assert again == cfg
    assert again.digest() == cfg.digest()


def test_merge_reports_sorted():
    r1 = VerificationReport("a")
    r2 = VerificationReport("b")
    from drinfeld.verify import CheckResult

    r1.checks.append(CheckResult("z", "pass"))
    r2.checks.append(CheckResult("a", "fail", {"lhs": 1, "rhs": 2}))
    merged = merge_reports([r1, r2])
    assert [c.name for c in merged.checks] == ["a", "z"]
    assert not merged.ok()


def test_run_suites_rejects_unknown():
    with pytest.raises(ValueError):
        run_suites(SMALL_F, ("nonsense",))


def test_reevaluate_fallback_compares_sides():
    assert reevaluate({"identity": "anything", "lhs": [1], "rhs": [2]})
    assert not reevaluate({"identity": "anything", "lhs": [1], "rhs": [1]})


def test_default_bundle_shape():
    bundle = default_bundle()
    labels = [entry.label for entry in bundle]
    assert "f-grid-q2" in labels and "f-grid-q3" in labels
    assert "pairing-q2-r2" in labels
    assert len(labels) == len(set(labels))
    for entry in bundle:
        assert entry.suites
