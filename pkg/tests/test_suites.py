import pytest

import pseudocalc as pc
from pseudocalc import check_suite, run_sweep
from pseudocalc.funcspec import ParseError


def _young_suite():
    return {
        "schema_version": 1,
        "items": [
            {
                "inequality": "young",
                "generator": "identity",
                "params": {"b": 1.0},
                "grid": {"p": [1.5, 2.0, 3.0], "a": [0.5, 1.0, 2.0]},
            }
        ],
    }


def test_check_suite_young_grid():
    report = check_suite(None, _young_suite())
    assert report.total == 9
    assert report.all_hold
    assert not report.errors
    # deterministic order: sorted axis names (a before p), cartesian expansion
    assert [r.p for r in report.rows[:3]] == [1.5, 2.0, 3.0]


def test_check_suite_empty():
    report = check_suite(None, {"schema_version": 1, "items": []})
    assert report.rows == () and report.errors == ()


def test_check_suite_unknown_inequality():
    suite = {"items": [{"inequality": "banach", "generator": "identity"}]}
    report = check_suite(None, suite)
    assert report.total == 0
    assert len(report.errors) == 1
    assert report.errors[0].error == "UnknownInequality"
    assert not report.all_hold


def test_check_suite_hh_refined_sweep():
    suite = {
        "items": [
            {
                "inequality": "hh_refined",
                "generator": "identity",
                "functions": {"f": "x^2"},
                "interval": [0, 1],
                "grid": {"lambda": {"lo": 0.0, "hi": 1.0, "steps": 11}},
            }
        ]
    }
    report = check_suite(None, suite)
    assert report.total == 11
    assert report.all_hold
    assert report.rows[0].lam == 0.0 and report.rows[-1].lam == 1.0


def test_check_suite_gla_two_rows():
    suite = {
        "items": [
            {"inequality": "gla_means", "generator": "identity", "params": {"u": 4.0, "v": 2.0}}
        ]
    }
    report = check_suite(None, suite)
    assert [r.name for r in report.rows] == ["gla_geometric_log", "gla_log_arithmetic"]
    assert report.all_hold


def test_check_suite_default_generator_fallback(identity_ctx):
    suite = {"items": [{"inequality": "young", "params": {"a": 1.0, "b": 2.0, "p": 2.0}}]}
    report = check_suite(identity_ctx, suite)
    assert report.total == 1 and report.all_hold
    # no default at all: error entry
    report = check_suite(None, suite)
    assert report.errors and report.errors[0].error == "ParameterError"


def test_check_suite_suite_level_generator():
    suite = {
        "generator": "power:2",
        "items": [{"inequality": "young", "params": {"a": 1.0, "b": 2.0, "p": 2.0}}],
    }
    report = check_suite(None, suite)
    assert report.rows[0].generator == "power:2"


def test_check_suite_runtime_error_collected():
    # non-pseudo-convex chain still yields a row; a genuinely failing
    # operation (Young at p=1) becomes an error entry
    suite = {
        "items": [
            {"inequality": "young", "generator": "identity",
             "params": {"a": 1.0, "b": 2.0, "p": 1.0}},
        ]
    }
    report = check_suite(None, suite)
    assert report.errors and report.errors[0].error == "ParameterError"


def test_check_suite_parse_error_propagates():
    suite = {
        "items": [
            {"inequality": "holder", "generator": "identity",
             "functions": {"f": "2*+x", "h": "x"}, "interval": [0, 1],
             "params": {"p": 2.0}},
        ]
    }
    with pytest.raises(ParseError):
        check_suite(None, suite)


def test_check_suite_inline_single_item():
    report = check_suite(None, {"inequality": "young", "generator": "identity",
                                "params": {"a": 1.0, "b": 2.0, "p": 2.0}})
    assert report.total == 1


def test_check_suite_random_axis_is_seed_deterministic():
    suite = {
        "items": [
            {the_key: the_val for the_key, the_val in (
                ("inequality", "young"), ("generator", "identity"),
                ("params", {"b": 1.0}),
                ("grid", {"a": {"random": 5, "lo": 0.5, "hi": 2.0},
                          "p": [2.0]}),
            )}
        ]
    }
    r1 = check_suite(None, suite, seed=7)
    r2 = check_suite(None, suite, seed=7)
    r3 = check_suite(None, suite, seed=8)
    assert [row.lhs_img for row in r1.rows] == [row.lhs_img for row in r2.rows]
    assert [row.lhs_img for row in r1.rows] != [row.lhs_img for row in r3.rows]


def test_run_sweep_young(identity_ctx):
    rows = run_sweep(identity_ctx, "young", {"a": 1.0, "b": 2.0}, None, None,
                     {"p": {"lo": 1.1, "hi": 4.0, "steps": 10}})
    assert len(rows) == 10
    assert all(r.holds and r.error is None for r in rows)
    assert all(r.margin >= -1e-8 for r in rows)


def test_run_sweep_minkowski_reversed(identity_ctx):
    # image floor keeps fractional powers smooth on the interval
    rows = run_sweep(identity_ctx, "minkowski", {}, {"f": "x+0.2", "h": "1"}, (0.0, 1.0),
                     {"p": {"lo": 0.2, "hi": 0.8, "steps": 4}})
    assert all(r.holds for r in rows)
    assert all(r.direction == "increasing" for r in rows)


def test_run_sweep_error_column(identity_ctx):
    # p sweeps across 1.0 where Young is undefined: that row carries an error
    rows = run_sweep(identity_ctx, "young", {"a": 1.0, "b": 2.0}, None, None,
                     {"p": [0.5, 1.0, 2.0]})
    assert len(rows) == 3
    assert rows[1].error is not None and not rows[1].holds
    assert rows[0].error is None and rows[2].error is None


def test_run_sweep_config_errors(identity_ctx):
    with pytest.raises(pc.ParameterError):
        run_sweep(identity_ctx, "young", {}, None, None, {"p": {"lo": 1, "hi": 2, "steps": 0}})
    with pytest.raises(pc.ParameterError):
        run_sweep(identity_ctx, "young", {}, None, None, {})
    with pytest.raises(pc.UnknownInequality):
        run_sweep(identity_ctx, "banach", {}, None, None, {"p": [2.0]})


def test_suite_schema_version_rejected():
    with pytest.raises(pc.ParameterError):
        check_suite(None, {"schema_version": 2, "items": []})
