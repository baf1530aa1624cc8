"""Quotients, blow-ups, log-Chern numbers and volumes on surface models."""

import random
from fractions import Fraction

import pytest

from ballq.surfaces import (
    BMYClass,
    CurveRecord,
    LogPair,
    QuotientOrbits,
    SMOOTH_ELLIPTIC,
    SMOOTH_RATIONAL,
    SINGULAR,
    SurfaceModel,
    blow_up,
    bmy_classify,
    cusp_count,
    etale_quotient,
    k_dot,
    log_chern,
    nef_numerical_check,
    volume_from_chi,
)


def upstairs_model(n):
    """Abelian-surface model: three slope curves meeting pairwise in 3n
    points, all of them triple points of the union."""
    names = ("s0", "s1", "s2")
    curves = {name: CurveRecord(0, SMOOTH_ELLIPTIC) for name in names}
    pairwise = {(a, b): 3 * n for i, a in enumerate(names) for b in names[i + 1:]}
    points = {f"p{k}_{m}": {name: 1 for name in names}
              for k in range(3) for m in range(n)}
    return SurfaceModel.build(0, 0, curves, pairwise, points)


def quotient_orbits(n):
    curve_orbits = {"core": ("s0", "s1", "s2")}
    point_orbits = {f"q{m}": tuple(f"p{k}_{m}" for k in range(3)) for m in range(n)}
    return QuotientOrbits(curve_orbits, point_orbits)


def test_quotient_of_slope_orbit():
    for n in (1, 2, 4):
        image = etale_quotient(upstairs_model(n), 3, quotient_orbits(n))
        assert image.chi_top == 0
        assert image.k2 == 0
        core = image.curves["core"]
        assert core.self_int == 6 * n
        assert core.kind == SINGULAR and core.resolved_kind == SMOOTH_ELLIPTIC
        assert all(image.point_multiplicity(f"q{m}", "core") == 3 for m in range(n))


def test_quotient_of_disjoint_orbit_keeps_smoothness():
    names = ("h0", "h1", "h2")
    curves = {name: CurveRecord(0, SMOOTH_ELLIPTIC) for name in names}
    model = SurfaceModel.build(0, 0, curves, {}, {})
    image = etale_quotient(model, 3, QuotientOrbits({"level": names}, {}))
    assert image.curves["level"].self_int == 0
    assert image.curves["level"].kind == SMOOTH_ELLIPTIC


def test_trivial_quotient_is_identity():
    model = upstairs_model(2)
    orbits = QuotientOrbits({name: (name,) for name in model.curves},
                            {p: (p,) for p in model.points})
    image = etale_quotient(model, 1, orbits)
    assert image.chi_top == model.chi_top and image.k2 == model.k2
    assert {n: r.self_int for n, r in image.curves.items()} == {
        n: r.self_int for n, r in model.curves.items()}


def test_quotient_rejects_non_free_point_orbits():
    model = upstairs_model(1)
    orbits = quotient_orbits(1)
    broken = QuotientOrbits(orbits.curve_orbits,
                            {"q0": ("p0_0", "p1_0"), "q1": ("p2_0",)})
    with pytest.raises(ValueError):
        etale_quotient(model, 3, broken)


def test_quotient_rejects_partial_partition():
    model = upstairs_model(1)
    broken = QuotientOrbits({"core": ("s0", "s1")}, quotient_orbits(1).point_orbits)
    with pytest.raises(ValueError):
        etale_quotient(model, 3, broken)


def build_blown_gamma(n):
    """Quotient of the slope orbit plus n fiber orbits, then n blow-ups."""
    names = ("s0", "s1", "s2")
    curves = {name: CurveRecord(0, SMOOTH_ELLIPTIC) for name in names}
    pairwise = {(a, b): 3 * n for i, a in enumerate(names) for b in names[i + 1:]}
    points = {}
    for m in range(n):
        for k in range(3):
            points[f"p{k}_{m}"] = {name: 1 for name in names}
    for m in range(n):
        for k in range(3):
            fiber = f"v{m}_{k}"
            curves[fiber] = CurveRecord(0, SMOOTH_ELLIPTIC)
            for name in names:
                pairwise[(name, fiber)] = 1
            points[f"p{k}_{m}"][fiber] = 1
    model = SurfaceModel.build(0, 0, curves, pairwise, points)
    curve_orbits = {"core": names}
    for m in range(n):
        curve_orbits[f"fiber{m + 1}"] = tuple(f"v{m}_{k}" for k in range(3))
    point_orbits = {f"q{m}": tuple(f"p{k}_{m}" for k in range(3)) for m in range(n)}
    image = etale_quotient(model, 3, QuotientOrbits(curve_orbits, point_orbits))
    blown = image
    for m in range(n):
        blown = blow_up(blown, f"q{m}", exceptional_name=f"e{m + 1}")
    return image, blown


def test_blow_up_family_invariants():
    for n in (1, 3, 4):
        image, blown = build_blown_gamma(n)
        assert blown.chi_top == n
        assert blown.k2 == -n
        assert blown.curves["core"].self_int == -3 * n
        assert blown.curves["core"].kind == SMOOTH_ELLIPTIC
        for m in range(1, n + 1):
            assert blown.curves[f"fiber{m}"].self_int == -1
            assert blown.pairwise_int("core", f"fiber{m}") == 0
            assert blown.curves[f"e{m}"].self_int == -1
            assert blown.curves[f"e{m}"].kind == SMOOTH_RATIONAL
            assert blown.pairwise_int(f"e{m}", "core") == 3
            assert blown.pairwise_int(f"e{m}", f"fiber{m}") == 1


def test_blow_up_unknown_point():
    model = upstairs_model(1)
    with pytest.raises(ValueError):
        blow_up(model, "nope")


def test_blow_up_level_curve_drops_by_point_count():
    # one smooth curve of self-intersection 0 through n simple points
    for n in (1, 4):
        curves = {"level": CurveRecord(0, SMOOTH_ELLIPTIC)}
        points = {f"q{m}": {"level": 1} for m in range(n)}
        model = SurfaceModel.build(0, 0, curves, {}, points)
        for m in range(n):
            model = blow_up(model, f"q{m}")
        assert model.curves["level"].self_int == -n


def test_k_dot_values():
    curves = {
        "t0": CurveRecord(-9, SMOOTH_ELLIPTIC),
        "e": CurveRecord(-1, SMOOTH_RATIONAL),
        "flat": CurveRecord(0, SMOOTH_ELLIPTIC),
        "node": CurveRecord(6, SINGULAR, resolved_kind=SMOOTH_ELLIPTIC),
    }
    model = SurfaceModel.build(3, -3, curves, {}, {})
    assert k_dot(model, "t0") == 9
    assert k_dot(model, "e") == -1
    assert k_dot(model, "flat") == 0
    with pytest.raises(ValueError):
        k_dot(model, "node")


def gamma_pair(n):
    _, blown = build_blown_gamma(n)
    boundary = ("core",) + tuple(f"fiber{m}" for m in range(1, n + 1))
    return LogPair(blown, boundary)


def test_log_chern_gamma_family():
    pair = gamma_pair(4)
    assert log_chern(pair) == (12, 4)


def test_log_chern_empty_boundary():
    model = SurfaceModel.build(0, 0, {}, {}, {})
    assert log_chern(LogPair(model, ())) == (0, 0)


def test_log_pair_invariants_enforced():
    _, blown = build_blown_gamma(1)
    with pytest.raises(ValueError):
        LogPair(blown, ("core", "e1"))  # rational boundary component
    with pytest.raises(ValueError):
        LogPair(blown, ("core", "core"))  # repeated name
    crossing = SurfaceModel.build(1, -1, {
        "a": CurveRecord(-1, SMOOTH_ELLIPTIC),
        "b": CurveRecord(-1, SMOOTH_ELLIPTIC),
    }, {("a", "b"): 2}, {})
    with pytest.raises(ValueError):
        LogPair(crossing, ("a", "b"))


def test_bmy_equality_for_gamma_pairs():
    for n in (1, 2, 5):
        assert bmy_classify(gamma_pair(n)) == BMYClass.EQUALITY


def test_bmy_strict_inequality_single_component():
    _, blown = build_blown_gamma(1)
    pair = LogPair(blown, ("core",))
    assert log_chern(pair) == (2, 1)
    assert bmy_classify(pair) == BMYClass.STRICT_INEQUALITY


def test_bmy_violation():
    model = SurfaceModel.build(1, 2, {"t": CurveRecord(-5, SMOOTH_ELLIPTIC)}, {}, {})
    pair = LogPair(model, ("t",))
    assert log_chern(pair) == (7, 1)
    assert bmy_classify(pair) == BMYClass.VIOLATION


def test_bmy_not_applicable_without_positivity():
    model = SurfaceModel.build(0, 0, {}, {}, {})
    assert bmy_classify(LogPair(model, ())) == BMYClass.NOT_APPLICABLE


def test_nef_numerical_check_gamma():
    for n in (1, 3):
        report = nef_numerical_check(gamma_pair(n))
        assert report.log_canonical_self_int == 3 * n
        assert set(report.boundary_pairings.values()) == {0}
        assert report.passed


def test_cusp_count():
    assert cusp_count(gamma_pair(4)) == 5
    _, blown = build_blown_gamma(1)
    assert cusp_count(LogPair(blown, ("core",))) == 1


def test_volume_from_chi():
    assert volume_from_chi(1).coefficient == Fraction(8, 3)
    assert volume_from_chi(0).coefficient == 0
    assert volume_from_chi(7).coefficient == Fraction(56, 3)
    assert volume_from_chi(3).text == "(8)·π²"
    assert volume_from_chi(1).text == "(8/3)·π²"
    with pytest.raises(ValueError):
        volume_from_chi(-1)


def test_volume_json_tags_decimal_as_display_only():
    doc = volume_from_chi(2).to_json()
    assert doc["pi_squared_coefficient"] == "16/3"
    assert "approx_display_only" in doc


def test_blow_up_deltas_random_models():
    rng = random.Random(777)
    for _ in range(120):
        k = rng.randint(1, 4)
        names = [f"c{i}" for i in range(k)]
        curves = {}
        for name in names:
            mult = rng.randint(0, 3)
            kind = SINGULAR if mult >= 2 else rng.choice(
                (SMOOTH_ELLIPTIC, SMOOTH_RATIONAL))
            resolved = SMOOTH_ELLIPTIC if kind == SINGULAR else None
            curves[name] = CurveRecord(rng.randint(-5, 5), kind, resolved)
        mults = {}
        for name in names:
            rec = curves[name]
            mults[name] = rng.randint(2, 3) if rec.kind == SINGULAR else rng.randint(0, 1)
        pairwise = {(a, b): rng.randint(0, 4)
                    for i, a in enumerate(names) for b in names[i + 1:]}
        model = SurfaceModel.build(rng.randint(-3, 3), rng.randint(-3, 3),
                                   curves, pairwise, {"p": mults})
        blown = blow_up(model, "p", exceptional_name="exc")
        assert blown.chi_top == model.chi_top + 1
        assert blown.k2 == model.k2 - 1
        for name in names:
            m = mults[name]
            assert blown.curves[name].self_int == curves[name].self_int - m * m
            assert blown.pairwise_int(name, "exc") == m
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                assert (blown.pairwise_int(a, b)
                        == model.pairwise_int(a, b) - mults[a] * mults[b])


def test_curve_record_validation():
    with pytest.raises(ValueError):
        CurveRecord(0, "wavy")
    with pytest.raises(ValueError):
        CurveRecord(0, SINGULAR)  # needs a resolved kind
    with pytest.raises(ValueError):
        CurveRecord(0, SMOOTH_ELLIPTIC, resolved_kind=SMOOTH_RATIONAL)


def test_surface_model_validation():
    curves = {"a": CurveRecord(0, SMOOTH_ELLIPTIC)}
    with pytest.raises(ValueError):
        SurfaceModel.build(0, 0, curves, {("a", "a"): 1}, {})
    with pytest.raises(ValueError):
        SurfaceModel.build(0, 0, curves, {("a", "b"): 1}, {})
    with pytest.raises(ValueError):
        SurfaceModel.build(0, 0, curves, {}, {"p": {"b": 1}})
    with pytest.raises(ValueError):
        SurfaceModel.build(0, 0, curves, {}, {"p": {"a": -1}})


def test_quotient_divisibility_errors():
    curves = {"a": CurveRecord(1, SMOOTH_ELLIPTIC)}
    model = SurfaceModel.build(0, 0, curves, {}, {})
    orbits = QuotientOrbits({"img": ("a",)}, {})
    with pytest.raises(ValueError):
        etale_quotient(model, 3, orbits)  # self-intersection 1 not divisible
    lopsided = SurfaceModel.build(1, 0, {"a": CurveRecord(0, SMOOTH_ELLIPTIC)}, {}, {})
    with pytest.raises(ValueError):
        etale_quotient(lopsided, 3, orbits)  # chi not divisible


def test_blow_up_rejects_multiple_point_on_smooth_curve():
    curves = {"a": CurveRecord(0, SMOOTH_ELLIPTIC)}
    model = SurfaceModel.build(0, 0, curves, {}, {"p": {"a": 2}})
    with pytest.raises(ValueError):
        blow_up(model, "p")


def test_exact_volume_rejects_negative():
    from ballq.surfaces import ExactVolume

    with pytest.raises(ValueError):
        ExactVolume(Fraction(-1, 3))
