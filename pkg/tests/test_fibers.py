"""Fiberwise structure: dual parameters, composition series, reducibility
loci, and the closed Jantzen quotient formula."""

from fractions import Fraction

import pytest

from sl2family.families import KTypeSet, ModuleFamily, make_family
from sl2family.fibers import (
    GROUP,
    MOTION,
    DualParam,
    WallRecord,
    composition_factors,
    dual_ktypes,
    evaluate_fiber,
    factor_containing_m,
    is_reducible,
    jantzen_quotient_formula,
    reducibility_points,
    scalar_to_json,
)
from sl2family.scalars import GaussianRational as GR
from sl2family.scalars import Poly
from sl2family.sheaf import ProjectivePoint

P = ProjectivePoint.parse


def cpoly(*coeffs) -> Poly:
    return Poly(tuple(GR.of(c) for c in coeffs), "r")


EVEN_GENERIC = make_family(0, cpoly(-1, 0, 1))  # c(r) = r^2 - 1
ODD_LIMIT = make_family(1, cpoly(0, 0, -1))  # c(r) = -r^2
RAY = make_family(2, cpoly(0))
WINDOW8 = make_family(0, cpoly(8))


class TestScalarJson:
    def test_forms(self):
        assert scalar_to_json(GR(3)) == 3
        assert scalar_to_json(GR(0)) == 0
        assert scalar_to_json(GR(Fraction(1, 2))) == "1/2"
        assert scalar_to_json(GR(Fraction(1, 2), 1)) == {"re": "1/2", "im": "1"}


class TestDualParam:
    def test_string_forms(self):
        assert str(DualParam.group(GR(0), 0, GR(1))) == "(0,0)_1"
        assert str(DualParam.motion(GR(1), 0)) == "(1,0)_0"
        assert str(DualParam.group(GR(3), 0, None)) == "(3,0)_r0"
        assert str(DualParam.group(GR(0), 2, GR(Fraction(1, 5)))) == "(0,2)_1/5"

    def test_canonical_reflection(self):
        assert str(DualParam.group(GR(5), -1, GR(1)).canonical()) == "(5,1)_1"
        assert str(DualParam.motion(GR(3), -1).canonical()) == "(3,1)_0"
        # boundary levels keep the sign of m: the two limits differ
        assert str(DualParam.group(GR(-1), -1, GR(1)).canonical()) == "(-1,-1)_1"
        assert str(DualParam.motion(GR(0), -1).canonical()) == "(0,-1)_0"
        p = DualParam.group(GR(5), 1, GR(2))
        assert p.canonical() == p

    def test_json_forms(self):
        assert DualParam.group(GR(0), 0, GR(1)).to_json() == {
            "flavor": GROUP, "R": 1, "level": 0, "m": 0,
        }
        assert DualParam.motion(GR(1), 0).to_json() == {
            "flavor": MOTION, "R": 0, "level": 1, "m": 0,
        }
        assert DualParam.group(GR(3), 0, None).to_json() == {
            "flavor": GROUP, "R": None, "level": 3, "m": 0,
        }

    def test_validation(self):
        with pytest.raises(ValueError):
            DualParam.group(GR(5), 3, GR(1))  # m = 3 pins the level to 3
        with pytest.raises(ValueError):
            DualParam.group(GR(3), 3, GR(0))  # R = 0 is the motion fiber
        with pytest.raises(ValueError):
            DualParam.motion(GR(1), 2)  # discrete motion K-types sit at 0
        DualParam.motion(GR(0), 4)
        DualParam.group(GR(8), -4, GR(7))


class TestDualKtypes:
    @pytest.mark.parametrize(
        "param,expected",
        [
            (DualParam.group(GR(-1), 1, GR(1)), KTypeSet.ray_up(1)),
            (DualParam.group(GR(-1), -1, GR(1)), KTypeSet.ray_down(-1)),
            (DualParam.group(GR(3), 1, GR(1)), KTypeSet.window(1)),
            (DualParam.group(GR(15), -1, GR(2)), KTypeSet.window(3)),
            (DualParam.group(GR(5), 1, GR(1)), KTypeSet.all_odd()),
            (DualParam.group(GR(1), 0, GR(1)), KTypeSet.all_even()),
            (DualParam.group(GR(0), 0, GR(1)), KTypeSet.window(0)),
            (DualParam.group(GR(0), 2, GR(1)), KTypeSet.ray_up(2)),
            (DualParam.group(GR(8), -4, GR(1)), KTypeSet.ray_down(-4)),
            (DualParam.motion(GR(0), 4), KTypeSet.singleton(4)),
            (DualParam.motion(GR(0), 1), KTypeSet.singleton(1)),
            (DualParam.motion(GR(-2), 1), KTypeSet.all_odd()),
            (DualParam.motion(GR(3), 0), KTypeSet.all_even()),
        ],
    )
    def test_table(self, param, expected):
        assert dual_ktypes(param) == expected


class TestEvaluateFiber:
    def test_group_fiber_at_wall(self):
        fib = evaluate_fiber(EVEN_GENERIC, P("1"))
        assert fib.flavor == GROUP and fib.level == GR(0)
        assert fib.up[-2] == GR(0) and fib.down[2] == GR(0)
        assert fib.up[0] == GR(1) and fib.down[0] == GR(1)
        assert fib.edge_is_cut(-2) and fib.edge_is_cut(0)
        assert not fib.edge_is_cut(2)
        assert is_reducible(fib)

    def test_group_fiber_generic(self):
        fib = evaluate_fiber(EVEN_GENERIC, P("2"))
        assert fib.level == GR(3)
        assert not is_reducible(fib)
        edges = fib.ktypes.members(fib.window[0], fib.window[1] - 2)
        assert not any(fib.edge_is_cut(n) for n in edges)

    def test_motion_fiber(self):
        fib = evaluate_fiber(EVEN_GENERIC, P("inf"))
        assert fib.flavor == MOTION
        assert fib.level == GR(1)  # the leading Casimir coefficient

    def test_window_fiber_edges(self):
        fib = evaluate_fiber(WINDOW8, P("3"))
        assert not fib.edge_is_cut(0) and not fib.edge_is_cut(-2)
        with pytest.raises(ValueError):
            fib.edge_is_cut(2)  # the edge out of the window is not tabulated

    def test_wall_symmetry_for_even_families(self):
        for pt in ("1", "2", "1/2", "-3"):
            fib = evaluate_fiber(EVEN_GENERIC, P(pt))
            for n in range(-4, 5, 2):
                assert fib.up[n] == fib.down[-n]


class TestCompositionFactors:
    def test_wall_fiber_splits_in_three(self):
        dec = composition_factors(evaluate_fiber(EVEN_GENERIC, P("1")))
        assert dec.complete
        assert [str(f.param) for f in dec.factors] == ["(0,-2)_1", "(0,0)_1", "(0,2)_1"]
        assert [f.ktypes for f in dec.factors] == [
            KTypeSet.ray_down(-2), KTypeSet.window(0), KTypeSet.ray_up(2),
        ]

    def test_generic_fiber_is_irreducible(self):
        dec = composition_factors(evaluate_fiber(EVEN_GENERIC, P("2")))
        assert dec.complete and [str(f.param) for f in dec.factors] == ["(3,0)_1/2"]

    def test_motion_fiber_of_generic_family(self):
        dec = composition_factors(evaluate_fiber(EVEN_GENERIC, P("inf")))
        assert dec.complete and [str(f.param) for f in dec.factors] == ["(1,0)_0"]

    def test_two_limit_factors(self):
        dec = composition_factors(evaluate_fiber(ODD_LIMIT, P("1")))
        assert [str(f.param) for f in dec.factors] == ["(-1,-1)_1", "(-1,1)_1"]

    def test_discrete_ray_fibers(self):
        fib = evaluate_fiber(RAY, P("5"))
        assert fib.down[4] == GR(-2)
        dec = composition_factors(fib)
        assert dec.complete and [str(f.param) for f in dec.factors] == ["(0,2)_1/5"]
        deci = composition_factors(evaluate_fiber(RAY, P("inf")))
        assert not deci.complete  # infinitely many characters, listed in part
        assert [str(f.param) for f in deci.factors] == ["(0,2)_0", "(0,4)_0", "(0,6)_0"]

    def test_window_fibers(self):
        assert [
            str(f.param) for f in composition_factors(evaluate_fiber(WINDOW8, P("3"))).factors
        ] == ["(8,0)_1/3"]
        deci = composition_factors(evaluate_fiber(WINDOW8, P("inf")))
        assert deci.complete
        assert [str(f.param) for f in deci.factors] == ["(0,-2)_0", "(0,0)_0", "(0,2)_0"]

    @pytest.mark.parametrize(
        "fam", [EVEN_GENERIC, ODD_LIMIT, WINDOW8, make_family(0, cpoly(-1, 0, -4))]
    )
    @pytest.mark.parametrize("pt", ["1", "-1", "2", "1/2", "3"])
    def test_ktype_conservation(self, fam, pt):
        """Factors partition the K-types of the fiber, nothing lost or shared."""
        fib = evaluate_fiber(fam, P(pt))
        lo, hi = fib.window
        fiber_members = set(fib.ktypes.members(lo, hi))
        seen = []
        for f in composition_factors(fib).factors:
            seen.extend(f.ktypes.members(lo, hi))
        assert len(seen) == len(set(seen))
        assert set(seen) == fiber_members

    def test_factor_containing_m(self):
        fib = evaluate_fiber(EVEN_GENERIC, P("1"))
        assert str(factor_containing_m(fib)) == "(0,0)_1"
        assert str(factor_containing_m(fib, 4)) == "(0,2)_1"
        assert str(factor_containing_m(fib, -6)) == "(0,-2)_1"
        with pytest.raises(ValueError):
            factor_containing_m(fib, 3)

    def test_factor_containing_m_at_motion_fiber(self):
        fib = evaluate_fiber(RAY, P("inf"))
        assert str(factor_containing_m(fib, 8)) == "(0,8)_0"


class TestReducibilityLocus:
    def test_even_generic_locus(self):
        loc = reducibility_points(EVEN_GENERIC)
        assert [str(p) for p in loc.points] == [
            f"r={v}" for v in range(-13, 14, 2)
        ]
        assert not loc.complete  # walls continue past the tabulated bound
        assert [w.k for w in loc.walls] == list(range(0, 13, 2))
        assert all(not w.irrational and not w.everywhere for w in loc.walls)
        wall0 = loc.walls[0]
        assert wall0.level == GR(0) and [str(p) for p in wall0.points] == ["r=-1", "r=1"]

    def test_odd_family_locus_contains_origin(self):
        loc = reducibility_points(make_family(1, cpoly(-1, 0, 1)))
        assert [str(p) for p in loc.points] == [f"r={v}" for v in range(-12, 13, 2)]
        assert [w.k for w in loc.walls] == list(range(-1, 12, 2))

    def test_negative_leading_coefficient_is_complete(self):
        loc = reducibility_points(make_family(0, cpoly(-1, 0, -4)))
        assert loc.points == () and loc.complete

    def test_discrete_ray_meets_only_infinity(self):
        loc = reducibility_points(RAY)
        assert [str(p) for p in loc.points] == ["inf"] and loc.complete
        assert loc.walls == ()
        line = reducibility_points(RAY, "realLine")
        assert line.points == () and line.domain == "realLine"

    def test_irrational_walls_flagged(self):
        loc = reducibility_points(make_family(0, cpoly(0, 0, 1)))  # c(r) = r^2
        assert [str(p) for p in loc.points] == ["r=0"]
        assert not loc.complete
        assert [w.k for w in loc.walls if w.irrational] == [2, 4, 6, 8, 10, 12]

    def test_window_family_locus(self):
        loc = reducibility_points(WINDOW8)
        assert [str(p) for p in loc.points] == ["inf"] and loc.complete
        loc0 = reducibility_points(make_family(0, cpoly(0)))  # single K-type window
        assert loc0.points == () and loc0.complete  # no edge to cut anywhere

    def test_linear_casimir(self):
        loc = reducibility_points(make_family(0, cpoly(0, 1)))  # c(r) = r
        assert [str(p) for p in loc.points[:4]] == ["r=0", "r=8", "r=24", "r=48"]
        assert str(loc.points[-1]) == "inf"
        assert not loc.complete

    def test_off_table_constant_family_is_reducible_everywhere(self):
        # bypasses the row validator: full even ladder pinned on wall 0
        fam = ModuleFamily(0, KTypeSet.all_even(), cpoly(0))
        loc = reducibility_points(fam)
        assert [(w.k, w.everywhere) for w in loc.walls] == [(0, True)]
        assert not loc.complete

    def test_rejections(self):
        with pytest.raises(ValueError):
            reducibility_points(EVEN_GENERIC, "circle")
        complex_fam = make_family(0, Poly((GR(0, 1),), "r"))
        with pytest.raises(ValueError):
            reducibility_points(complex_fam)

    def test_json_form(self):
        assert reducibility_points(RAY).to_json() == {
            "domain": "realProjLine",
            "points": ["inf"],
            "complete": True,
            "max_k": 12,
            "walls": [],
        }


class TestJantzenQuotient:
    def test_even_family_fixtures(self):
        assert str(jantzen_quotient_formula(EVEN_GENERIC, P("1"))) == "(0,0)_1"
        assert str(jantzen_quotient_formula(EVEN_GENERIC, P("inf"))) == "(1,0)_0"
        assert str(jantzen_quotient_formula(EVEN_GENERIC, P("2"))) == "(3,0)_1/2"

    def test_limit_ray_fixture(self):
        fam = make_family(1, cpoly(-1))
        assert str(jantzen_quotient_formula(fam, P("3"))) == "(-1,1)_1/3"

    def test_matches_composition_factor(self):
        fam = make_family(-1, cpoly(-1, 0, -4))
        pt = P("1/2")
        jq = jantzen_quotient_formula(fam, pt)
        assert str(jq) == "(-2,1)_2"
        assert jq == factor_containing_m(evaluate_fiber(fam, pt), -1)

    @pytest.mark.parametrize(
        "fam",
        [
            EVEN_GENERIC,
            make_family(1, cpoly(-1, 0, -1)),
            RAY,
            make_family(0, cpoly(-1, 0, 3)),
            make_family(-3, cpoly(3)),
            make_family(1, cpoly(-1, 0, 8)),
        ],
    )
    @pytest.mark.parametrize("pt", ["1", "-1", "2", "-1/2", "3", "inf"])
    def test_agrees_with_direct_decomposition(self, fam, pt):
        point = P(pt)
        jq = jantzen_quotient_formula(fam, point)
        direct = factor_containing_m(evaluate_fiber(fam, point), fam.m)
        assert jq == direct, (str(fam), pt)

    def test_rejections(self):
        with pytest.raises(ValueError, match="outside the chart at infinity"):
            jantzen_quotient_formula(EVEN_GENERIC, P("0"))
        with pytest.raises(ValueError, match="does not extend"):
            jantzen_quotient_formula(make_family(0, cpoly(-1, 1, 1)), P("1"))
        with pytest.raises(ValueError, match="real points"):
            jantzen_quotient_formula(EVEN_GENERIC, ProjectivePoint(GR(1), GR(0, 1)))
