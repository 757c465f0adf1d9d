"""Chart-local sections of the deformation family over the projective line.

The family of Lie algebras glues two charts: the finite chart (coordinate
r) carries the constant sl2 structure, and the chart at infinity
(coordinate R, with r = 1/R on the overlap) carries rescaled ladder
generators whose bracket is [raising, lowering] = R^2 * cartan.  A section
is stored as a map from PBW monomials to Laurent polynomials in the chart
coordinate; negative exponents are legal and flag a rational
(non-regular) section.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Optional

from .pbw import COMPACT, Monomial, UEAElement, casimir, normal_multiply
from .scalars import GR_ONE, GR_ZERO, GaussianRational, Poly

CHART_FINITE = "X0"
CHART_INFINITY = "Xinf"

_CHART_VAR = {CHART_FINITE: "r", CHART_INFINITY: "R"}


def chart_variable(chart: str) -> str:
    try:
        return _CHART_VAR[chart]
    except KeyError:
        raise ValueError(f"unknown chart {chart!r}") from None


def other_chart(chart: str) -> str:
    return CHART_INFINITY if chart == CHART_FINITE else CHART_FINITE


@dataclass(frozen=True)
class Laurent:
    """A Laurent polynomial over Q(i) in a tagged chart coordinate."""

    var: str
    coeffs: dict  # int exponent -> GaussianRational, zero values dropped

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "coeffs", {e: c for e, c in self.coeffs.items() if c}
        )

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(var: str) -> "Laurent":
        return Laurent(var, {})

    @staticmethod
    def const(c, var: str) -> "Laurent":
        return Laurent(var, {0: GaussianRational.of(c)})

    @staticmethod
    def one(var: str) -> "Laurent":
        return Laurent.const(1, var)

    @staticmethod
    def monomial(var: str, exp: int, coeff=1) -> "Laurent":
        return Laurent(var, {exp: GaussianRational.of(coeff)})

    @staticmethod
    def from_poly(p: Poly) -> "Laurent":
        return Laurent(p.var, {k: c for k, c in enumerate(p.coeffs)})

    # -- structure ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def valuation(self) -> Optional[int]:
        """Order of vanishing at coordinate 0; None for the zero element."""
        return min(self.coeffs) if self.coeffs else None

    def degree(self) -> Optional[int]:
        return max(self.coeffs) if self.coeffs else None

    @property
    def is_polynomial(self) -> bool:
        return all(e >= 0 for e in self.coeffs)

    def to_poly(self) -> Poly:
        if not self.is_polynomial:
            raise ValueError(f"{self} has a pole at {self.var}=0")
        top = max(self.coeffs, default=-1)
        return Poly(
            tuple(self.coeffs.get(k, GR_ZERO) for k in range(top + 1)), self.var
        )

    def _check_var(self, other: "Laurent") -> None:
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Laurent):
            self._check_var(other)
            out = dict(self.coeffs)
            for e, c in other.coeffs.items():
                s = out.get(e, GR_ZERO) + c
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
            return Laurent(self.var, out)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self + Laurent.const(other, self.var)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = Laurent.const(other, self.var)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Laurent":
        return Laurent(self.var, {e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, Laurent):
            self._check_var(other)
            out: dict = {}
            for e1, c1 in self.coeffs.items():
                for e2, c2 in other.coeffs.items():
                    e = e1 + e2
                    s = out.get(e, GR_ZERO) + c1 * c2
                    if s:
                        out[e] = s
                    elif e in out:
                        del out[e]
            return Laurent(self.var, out)
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = GaussianRational.of(other)
            return Laurent(self.var, {e: v * c for e, v in self.coeffs.items()})
        return NotImplemented

    __rmul__ = __mul__

    def shifted(self, k: int) -> "Laurent":
        """Multiplication by the k-th power of the chart coordinate."""
        return Laurent(self.var, {e + k: c for e, c in self.coeffs.items()})

    def reciprocal_substitution(self) -> "Laurent":
        """Substitute the coordinate by its reciprocal, flipping the chart tag."""
        return Laurent(
            "R" if self.var == "r" else "r",
            {-e: c for e, c in self.coeffs.items()},
        )

    def eval(self, x) -> GaussianRational:
        x = GaussianRational.of(x) if not isinstance(x, GaussianRational) else x
        acc = GR_ZERO
        for e, c in self.coeffs.items():
            if e >= 0:
                acc = acc + c * x ** e if e else acc + c
                continue
            if not x:
                raise ZeroDivisionError(f"pole of {self} at {self.var}=0")
            acc = acc + c / x ** (-e)
        return acc

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            raise ValueError("negative powers are not defined")
        acc = Laurent.one(self.var)
        for _ in range(n):
            acc = acc * self
        return acc

    # -- rendering -----------------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            if e == 0:
                mono = ""
            elif e == 1:
                mono = self.var
            else:
                mono = f"{self.var}^{e}"
            if not mono:
                body = str(c)
            elif c == GR_ONE:
                body = mono
            elif c == -GR_ONE:
                body = f"-{mono}"
            elif c.is_real and c.re.denominator == 1:
                body = f"{c}*{mono}"
            else:
                body = f"({c})*{mono}"
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
        return out

    def to_json(self) -> dict:
        if self.is_polynomial:
            return self.to_poly().to_json()
        lo = self.valuation()
        hi = self.degree()
        return {
            "var": self.var,
            "valuation": lo,
            "coeffs": [
                self.coeffs.get(e, GR_ZERO).to_json() for e in range(lo, hi + 1)
            ],
        }


@dataclass(frozen=True)
class ProjectivePoint:
    """A point [alpha : beta] of the projective line over Q(i), normalized.

    Normal form: [1 : r] for finite points (r is the finite-chart
    coordinate) and [0 : 1] for the point at infinity.  The chart-at-
    infinity coordinate of [alpha : beta] is R = alpha/beta.
    """

    alpha: GaussianRational
    beta: GaussianRational

    def __post_init__(self) -> None:
        a = GaussianRational.of(self.alpha) if not isinstance(self.alpha, GaussianRational) else self.alpha
        b = GaussianRational.of(self.beta) if not isinstance(self.beta, GaussianRational) else self.beta
        if not a and not b:
            raise ValueError("[0 : 0] is not a projective point")
        if a:
            b = b / a
            a = GR_ONE
        else:
            b = GR_ONE
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @staticmethod
    def from_r(x) -> "ProjectivePoint":
        return ProjectivePoint(GR_ONE, GaussianRational.of(x))

    @staticmethod
    def from_R(x) -> "ProjectivePoint":
        return ProjectivePoint(GaussianRational.of(x), GR_ONE)

    @staticmethod
    def infinity() -> "ProjectivePoint":
        return ProjectivePoint(GR_ZERO, GR_ONE)

    @property
    def is_infinity(self) -> bool:
        return not self.alpha

    @property
    def is_origin(self) -> bool:
        """True at [1 : 0], the point r=0 outside the chart at infinity."""
        return bool(self.alpha) and not self.beta

    @property
    def is_real(self) -> bool:
        return self.alpha.is_real and self.beta.is_real

    def r_value(self) -> Optional[GaussianRational]:
        if self.is_infinity:
            return None
        return self.beta

    def R_value(self) -> Optional[GaussianRational]:
        if self.is_origin:
            return None
        return self.alpha / self.beta

    @staticmethod
    def parse(text: str) -> "ProjectivePoint":
        t = text.strip()
        if t in ("inf", "infinity", "oo"):
            return ProjectivePoint.infinity()
        if t.startswith("r="):
            return ProjectivePoint.from_r(Fraction(t[2:]))
        if t.startswith("R="):
            return ProjectivePoint.from_R(Fraction(t[2:]))
        return ProjectivePoint.from_r(Fraction(t))

    def __str__(self) -> str:
        if self.is_infinity:
            return "inf"
        return f"r={self.beta}"


def _tau_for(chart: str) -> Laurent:
    if chart == CHART_FINITE:
        return Laurent.one("r")
    return Laurent.monomial("R", 2)


@dataclass(frozen=True)
class FamilySection:
    """A chart-local section of the enveloping-algebra family.

    Monomial keys follow the PBW conventions of pbw.py relative to the
    compact-type generators of the chart.  Laurent coefficients with
    negative exponents are permitted and flag a rational section.
    """

    chart: str
    terms: dict  # Monomial -> Laurent

    def __post_init__(self) -> None:
        var = chart_variable(self.chart)
        pruned = {}
        for k, f in self.terms.items():
            if not isinstance(f, Laurent):
                f = Laurent.const(f, var)
            if f.var != var:
                raise ValueError(f"coefficient variable {f.var} does not match chart {self.chart}")
            if f:
                pruned[tuple(k)] = f
        object.__setattr__(self, "terms", pruned)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(chart: str) -> "FamilySection":
        return FamilySection(chart, {})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def rational(self) -> bool:
        """True when some coefficient has a pole at the chart origin."""
        return any(f.valuation() < 0 for f in self.terms.values())

    def coeff(self, mono: Monomial) -> Laurent:
        return self.terms.get(tuple(mono), Laurent.zero(chart_variable(self.chart)))

    def _check_chart(self, other: "FamilySection") -> None:
        if self.chart != other.chart:
            raise ValueError(f"chart mismatch: {self.chart} vs {other.chart}")

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, FamilySection):
            return NotImplemented
        self._check_chart(other)
        out = dict(self.terms)
        for k, f in other.terms.items():
            s = out.get(k, Laurent.zero(f.var)) + f
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return FamilySection(self.chart, out)

    def __sub__(self, other):
        if not isinstance(other, FamilySection):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "FamilySection":
        return FamilySection(self.chart, {k: -f for k, f in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, FamilySection):
            self._check_chart(other)
            tau = _tau_for(self.chart)
            return FamilySection(self.chart, normal_multiply(self.terms, other.terms, tau))
        if isinstance(other, Laurent):
            if other.var != chart_variable(self.chart):
                raise ValueError("scalar variable does not match chart")
            return FamilySection(self.chart, {k: f * other for k, f in self.terms.items()})
        if isinstance(other, (int, Fraction, GaussianRational)):
            return FamilySection(self.chart, {k: f * other for k, f in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, Laurent)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> "FamilySection":
        if n < 0:
            raise ValueError("negative powers are not defined")
        acc = FamilySection(self.chart, {(0, 0, 0): Laurent.one(chart_variable(self.chart))})
        for _ in range(n):
            acc = acc * self
        return acc

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        gens = ("Y", "H", "X") if self.chart == CHART_FINITE else ("Yinf", "Hinf", "Xinf")
        parts = []
        for k in sorted(self.terms, key=lambda k: (k[0], k[2], k[1]), reverse=True):
            a, b, c = k
            factors = []
            if a:
                factors.append(gens[0] if a == 1 else f"{gens[0]}^{a}")
            if c:
                factors.append(gens[2] if c == 1 else f"{gens[2]}^{c}")
            if b:
                factors.append(gens[1] if b == 1 else f"{gens[1]}^{b}")
            mono = "*".join(factors) if factors else "1"
            parts.append(f"({self.terms[k]})*{mono}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "chart": self.chart,
            "rational": self.rational,
            "terms": [
                {"mono": list(k), "coeff": self.terms[k].to_json()}
                for k in sorted(self.terms)
            ],
        }


def section_from_constant(u: UEAElement, chart: str = CHART_FINITE) -> FamilySection:
    """The section 1 (x) u determined by a constant enveloping-algebra element.

    u must be written in the compact basis, whose generators restrict to
    the finite-chart frames.  Over the chart at infinity the ladder frames
    rescale, so the section may acquire poles there.
    """
    if u.basis is not COMPACT:
        raise ValueError("constant sections are taken in the compact basis")
    base = FamilySection(
        CHART_FINITE, {k: Laurent.const(c, "r") for k, c in u.terms.items()}
    )
    if chart == CHART_FINITE:
        return base
    return to_infinity_chart(base)


def to_infinity_chart(s: FamilySection) -> FamilySection:
    """Rewrite a finite-chart section in the chart at infinity.

    Each monomial with ladder exponents a, c picks up the factor R^-(a+c)
    (the ladder frames at infinity are R times the finite ones), and the
    scalar coefficients undergo the reciprocal substitution r = 1/R.
    """
    if s.chart != CHART_FINITE:
        raise ValueError("expected a finite-chart section")
    out = {}
    for (a, b, c), f in s.terms.items():
        out[(a, b, c)] = f.reciprocal_substitution().shifted(-(a + c))
    return FamilySection(CHART_INFINITY, out)


def to_finite_chart(s: FamilySection) -> FamilySection:
    if s.chart != CHART_INFINITY:
        raise ValueError("expected a section over the chart at infinity")
    out = {}
    for (a, b, c), f in s.terms.items():
        out[(a, b, c)] = f.reciprocal_substitution().shifted(-(a + c))
    return FamilySection(CHART_FINITE, out)


def casimir_section(chart: str) -> FamilySection:
    """The chart's Casimir section: the Casimir element on the finite chart,
    its R^2-rescaling (which is regular and nonvanishing) at infinity."""
    if chart == CHART_FINITE:
        return section_from_constant(casimir(COMPACT), CHART_FINITE)
    return section_from_constant(casimir(COMPACT), CHART_INFINITY) * Laurent.monomial("R", 2)


def is_regular_at(s: FamilySection, p: ProjectivePoint) -> bool:
    """True when the section, read in a chart containing p, has no pole at p.

    Coefficients are Laurent polynomials, so poles only occur at the two
    chart origins; everywhere else sections are automatically regular.
    """
    if p.is_infinity:
        v = s if s.chart == CHART_INFINITY else to_infinity_chart(s)
        return not v.rational
    if p.is_origin:
        v = s if s.chart == CHART_FINITE else to_finite_chart(s)
        return not v.rational
    return True


class NotCentralError(ValueError):
    """Raised when an operation requires a section of the center."""


def center_decompose(s: FamilySection) -> Optional[Dict[int, Laurent]]:
    """Write s as sum_j g_j * Casimir^j with Laurent scalars g_j.

    Returns the coefficient map, or None when s is not such a combination
    (equivalently, not a section of the center of the chart).  The
    decomposition peels off the top Casimir power: the coefficient of the
    extremal monomial (N, 0, N) in Casimir^N is exactly 4^N.
    """
    cur = FamilySection(s.chart, dict(s.terms))
    cas = casimir_section(s.chart)
    var = chart_variable(s.chart)
    out: Dict[int, Laurent] = {}
    while not cur.is_zero:
        if any(a != c for (a, b, c) in cur.terms):
            return None
        n = max(a for (a, b, c) in cur.terms)
        if n == 0:
            leftovers = [k for k in cur.terms if k != (0, 0, 0)]
            if leftovers:
                return None
            out[0] = cur.terms[(0, 0, 0)]
            break
        lead = cur.terms.get((n, 0, n))
        if lead is None:
            return None
        g = lead * Fraction(1, 4 ** n)
        out[n] = g
        cur = cur - (cas ** n) * g
        if not cur.is_zero and max(a for (a, b, c) in cur.terms) >= n:
            return None
    return out


def center_membership(s: FamilySection) -> bool:
    """Decide membership in the polynomial center of the chart.

    Over the chart at infinity the center's global sections are the
    polynomial algebra on the coordinate and the rescaled Casimir; over
    the finite chart, on the coordinate and the Casimir itself.  Rational
    sections of the center (negative coefficient exponents) are rejected.
    """
    dec = center_decompose(s)
    if dec is None:
        return False
    return all(g.is_polynomial for g in dec.values())


@dataclass(frozen=True)
class CartanSection:
    """A section valued in polynomials on the family of Cartan subalgebras.

    Stored as coefficients of powers of the finite-chart Cartan generator.
    Regularity at infinity depends on which Cartan subfamily is meant: the
    compact-type subfamily is a trivial line bundle (coefficientwise
    check), while the split-type subfamily twists, so the coefficient of
    h^k must vanish to order k at infinity.
    """

    chart: str
    cartan: str  # "compact" | "split"
    coeffs: dict  # degree -> Laurent

    def __post_init__(self) -> None:
        if self.cartan not in ("compact", "split"):
            raise ValueError(f"unknown cartan {self.cartan!r}")
        var = chart_variable(self.chart)
        pruned = {}
        for k, f in self.coeffs.items():
            if not isinstance(f, Laurent):
                f = Laurent.const(f, var)
            if f:
                pruned[int(k)] = f
        object.__setattr__(self, "coeffs", pruned)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Laurent:
        return self.coeffs.get(k, Laurent.zero(chart_variable(self.chart)))

    def in_infinity_chart(self) -> "CartanSection":
        if self.chart == CHART_INFINITY:
            return self
        return CartanSection(
            CHART_INFINITY,
            self.cartan,
            {k: f.reciprocal_substitution() for k, f in self.coeffs.items()},
        )

    def in_finite_chart(self) -> "CartanSection":
        if self.chart == CHART_FINITE:
            return self
        return CartanSection(
            CHART_FINITE,
            self.cartan,
            {k: f.reciprocal_substitution() for k, f in self.coeffs.items()},
        )

    def is_regular_at(self, p: ProjectivePoint) -> bool:
        if p.is_infinity:
            v = self.in_infinity_chart()
            if self.cartan == "compact":
                return all(f.valuation() >= 0 for f in v.coeffs.values())
            return all(f.valuation() >= k for k, f in v.coeffs.items())
        if p.is_origin:
            v = self.in_finite_chart()
            return all(f.valuation() >= 0 for f in v.coeffs.values())
        return True

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        h = "H" if self.cartan == "compact" else "Hs"
        parts = []
        for k in sorted(self.coeffs, reverse=True):
            mono = "1" if k == 0 else (h if k == 1 else f"{h}^{k}")
            parts.append(f"({self.coeffs[k]})*{mono}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "chart": self.chart,
            "cartan": self.cartan,
            "coeffs": [
                {"degree": k, "coeff": self.coeffs[k].to_json()}
                for k in sorted(self.coeffs)
            ],
        }


def gamma_family(s: FamilySection, cartan: str) -> CartanSection:
    """The family version of the Cartan projection with rho-shift.

    Defined on central sections only: decompose s into Casimir powers and
    send the Casimir to h^2 - 1 (finite chart) or its R^2-rescaling to
    R^2*(h^2 - 1) (chart at infinity).  For either choice of Cartan the
    image has the same coefficients; the two differ in the regularity
    geometry recorded on the result.  Regular central input yields a
    regular image (asserted).
    """
    dec = center_decompose(s)
    if dec is None:
        raise NotCentralError("gamma_family requires a central section")
    var = chart_variable(s.chart)
    coeffs: Dict[int, Laurent] = {}
    for j, g in dec.items():
        scale = g if s.chart == CHART_FINITE else g.shifted(2 * j)
        for t in range(j + 1):
            w = comb(j, t) * (-1) ** (j - t)
            cur = coeffs.get(2 * t, Laurent.zero(var)) + scale * w
            if cur:
                coeffs[2 * t] = cur
            elif 2 * t in coeffs:
                del coeffs[2 * t]
    out = CartanSection(s.chart, cartan, coeffs)
    if s.chart == CHART_INFINITY and not s.rational:
        assert out.is_regular_at(ProjectivePoint.infinity())
    return out
