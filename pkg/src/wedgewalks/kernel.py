"""Kernel systems for the wedge functional equations, their roots, and the
iterated compositions that solve them.

Everything here lives after the specialization x = y = t (both step weights
equal to the length variable); solutions and all verifications happen there.
Arguments ``a``/``b`` may be exact rationals or series in t; roots in closed
form exist only for slope p = 1.

The kernel form of the column-construction equation is

    K(a,b) * f(a,b) = X(a,b) + Y(a,b) * f(a, t*a) + Z(a,b) * f(t*b, b)

where f(a, t*a) re-weights walks whose endpoint sits on the lower boundary
line and f(t*b, b) those on the upper one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

from .errors import ConsistencyError
from .series import TSeries

Arg = Union[int, Fraction, TSeries]

#: rational sample arguments for identity checks (values that keep every
#: leading coefficient nonzero)
SAMPLE_ARGS = (
    Fraction(1),
    Fraction(1, 2),
    Fraction(1, 3),
    Fraction(2, 3),
    Fraction(3, 5),
    Fraction(2),
)


class BranchSelectionError(ValueError):
    """A kernel-root branch failed its leading-term check."""


def tvar(order: int) -> TSeries:
    return TSeries.t_power(1, order)


def as_series(v: Arg, order: int) -> TSeries:
    if isinstance(v, TSeries):
        return v
    return TSeries.constant(Fraction(v), order)


class KernelCoeffs(NamedTuple):
    kernel: TSeries        # K
    free_term: TSeries     # X
    lower: TSeries         # Y, multiplies f(a, t*a)
    upper: TSeries         # Z, multiplies f(t*b, b)


@dataclass(frozen=True)
class KernelSystem:
    """A model/slope pair with its coefficient evaluators bound."""

    model: str
    p: int = 1

    def __post_init__(self):
        if self.model not in ("symmetric", "asymmetric"):
            raise ValueError(f"no kernel system for model {self.model!r}")
        if self.p < 1:
            raise ValueError("slope p must be a positive integer")

    def coeffs(self, a: Arg, b: Arg, order: int) -> "KernelCoeffs":
        return kernel_coeffs(self.model, self.p, a, b, order)

    def kernel(self, a: Arg, b: Arg, order: int) -> TSeries:
        return self.coeffs(a, b, order).kernel

    def root(self, which: str, arg: Arg, order: int) -> TSeries:
        if self.p != 1:
            raise ValueError("closed-form roots exist for p = 1 only")
        return root(self.model, which, arg, order)


def kernel_coeffs(kind: str, p: int, a: Arg, b: Arg, order: int) -> KernelCoeffs:
    """The quadruple (K, X, Y, Z) for either model and any integer p >= 1."""
    t = tvar(order)
    a = as_series(a, order)
    b = as_series(b, order)
    bya = b - t * a
    ayb = a - t * b
    square = a * a + b * b - 2 * (t * a * b)
    x_term = bya * ayb
    if kind == "symmetric":
        abp = (a * b) ** p
        k = x_term * (1 - t * abp) - t * t * abp * square
        y_term = -(t * t) * a ** (p + 1) * b**p * ayb
        z_term = -(t * t) * a**p * b ** (p + 1) * bya
    elif kind == "asymmetric":
        ap = a**p
        k = x_term * (1 - t * ap) - t * t * ap * square
        y_term = -(t * t) * a ** (p + 1) * ayb
        z_term = -(t * t) * ap * b * bya
    else:
        raise ValueError(f"no kernel system for model {kind!r}")
    return KernelCoeffs(k, x_term, y_term, z_term)


def kernel_p1_printed(a: Arg, b: Arg, order: int) -> TSeries:
    """The reduced symmetric p=1 kernel, expanded as a quadratic in b."""
    t = tvar(order)
    a = as_series(a, order)
    b = as_series(b, order)
    qa, qb, qc = _quad_sym(a, t)
    return qa * b * b + qb * b + qc


def _quad_sym(a: TSeries, t: TSeries) -> tuple[TSeries, TSeries, TSeries]:
    """Symmetric p=1 kernel as A*b^2 + B*b + C."""
    a2 = a * a
    qa = t * t * t * a2 - t * a2 - t
    qb = (1 + t * t) * a
    qc = -t * a2
    return qa, qb, qc


def _quad_asym(a: TSeries, t: TSeries) -> tuple[TSeries, TSeries, TSeries]:
    """Asymmetric p=1 kernel as A*b^2 + B*b + C."""
    one = 1 + t * t
    qa = -t
    qb = a * (one - t * a * (1 - t * t))
    qc = -t * a * a
    return qa, qb, qc


def kernel_quadratic(kind: str, a: Arg, order: int) -> tuple[TSeries, TSeries, TSeries]:
    t = tvar(order)
    a = as_series(a, order)
    return _quad_sym(a, t) if kind == "symmetric" else _quad_asym(a, t)


# -- roots (p = 1) ----------------------------------------------------------

def _root_sym(a: TSeries, sign: int, order: int) -> TSeries:
    t = tvar(order)
    rad = (1 - t * t) * (1 - t * t - 4 * (t * t) * (a * a))
    s = rad.sqrt()
    num = a * (1 + t * t + sign * s) * Fraction(1, 2)
    den = t * (1 + a * a * (1 - t * t))
    return num / den


def _root_asym_b(a: TSeries, sign: int, order: int) -> TSeries:
    t = tvar(order)
    ta = t * a
    rad = (1 - t * t) * ((1 - ta) ** 2 - t * t * (1 + ta) ** 2)
    s = rad.sqrt()
    bracket = 1 + t * t - t * (1 - t * t) * a + sign * s
    return a * bracket / (2 * t)


def _root_asym_a(b: TSeries, sign: int, order: int) -> TSeries:
    t = tvar(order)
    rad = (1 - t * t) * (1 - t * t - 4 * (t * t) * b)
    s = rad.sqrt()
    num = b * (1 + t * t + sign * s) * Fraction(1, 2)
    den = t * (1 + b * (1 - t * t))
    return num / den


def root(kind: str, which: str, arg: Arg, order: int) -> TSeries:
    """A kernel root as a series in t.

    ``which`` is one of ``beta-``, ``beta+`` (roots in the second slot) and,
    for the asymmetric model, ``alpha-``, ``alpha+`` (roots in the first
    slot).  The ``-`` branches are the formal-power-series ones with leading
    term t*arg; the ``+`` branches are their Laurent inverses with valuation
    val(arg) - 1.
    """
    w = order + 6
    s = as_series(arg, w)
    if s.is_zero():
        raise ValueError("root argument must be nonzero")
    if which.startswith("alpha") and kind != "asymmetric":
        raise ValueError("alpha roots exist for the asymmetric model only")
    sign = -1 if which.endswith("-") else +1
    if kind == "symmetric":
        res = _root_sym(s, sign, w)
    elif which.startswith("beta"):
        res = _root_asym_b(s, sign, w)
    else:
        res = _root_asym_a(s, sign, w)
    if s.valuation is not None and s.valuation >= 0:
        want = s.valuation + (1 if sign < 0 else -1)
        if res.valuation != want:
            raise BranchSelectionError(
                f"{which} branch has valuation {res.valuation}, expected {want}"
            )
        if sign < 0 and res.coeff(want) != s.coeff(s.valuation):
            raise BranchSelectionError(
                f"{which} branch leading coefficient check failed"
            )
    # series arguments near their reliable order cannot support the full
    # requested order; report what is actually known
    return res.truncate(min(order, res.order))


# -- iterated compositions ---------------------------------------------------

@dataclass(frozen=True)
class IteratedRoot:
    n: int
    closed_form: TSeries
    composed_form: TSeries


def _tpoly_acc(terms: list[tuple[int, int]], order: int) -> TSeries:
    """Laurent polynomial from (exponent, coefficient) pairs, exponents may repeat."""
    acc: dict[int, Fraction] = {}
    for k, c in terms:
        acc[k] = acc.get(k, Fraction(0)) + c
    return TSeries.from_dict(acc, order)


def _beta_closed_inverse(n: int, a: Arg, order: int) -> TSeries:
    """1/beta_n(a) for the symmetric model, any integer n (three-term solution)."""
    w = order + 2 * abs(n) + 10
    one_m_t2 = TSeries.from_dict({0: 1, 2: -1}, w)
    c1 = _tpoly_acc([(1 - n, 1), (1 + n, -1)], w) / one_m_t2
    c2 = _tpoly_acc([(2 - n, 1), (n, -1)], w) / one_m_t2
    b1 = root("symmetric", "beta-", as_series(a, w), w)
    inv = c1 * b1.inverse() - c2 * as_series(a, w).inverse()
    return inv


def beta_closed(n: int, a: Arg, order: int) -> TSeries:
    if n == 0:
        return as_series(a, order)
    return _beta_closed_inverse(n, a, order + 2 * abs(n) + 4).inverse().truncate(order)


def beta_composed(n: int, a: Arg, order: int) -> TSeries:
    """beta_n by n-fold composition of the degree-one root maps.

    Positive n applies the series branch repeatedly.  Negative n walks the
    kernel quadratic downward: the two roots of K(beta_m, .) are exactly
    beta_{m-1} and beta_{m+1}, so beta_{m-1} = C(beta_m) / (A(beta_m) *
    beta_{m+1}); this stays inside rational series where the explicit
    plus-branch formula would need square roots that leave the field.
    """
    w = order + 2 * abs(n) + 10
    cur = as_series(a, w)
    if n >= 0:
        for _ in range(n):
            cur = root("symmetric", "beta-", cur, cur.order)
        return cur.truncate(order)
    t = tvar(w)
    upper = root("symmetric", "beta-", cur, w)  # beta_{m+1} with m = 0
    for _ in range(-n):
        qa, _qb, qc = _quad_sym(cur, t)
        lower = qc / (qa * upper)
        upper, cur = cur, lower
    return cur.truncate(order)


def beta_iterate(n: int, a: Arg, order: int) -> IteratedRoot:
    closed = beta_closed(n, a, order)
    composed = beta_composed(n, a, order)
    bad = closed.first_difference(composed)
    if bad is not None:
        raise ConsistencyError(
            f"beta_{n} closed and composed forms differ first at t^{bad}"
        )
    return IteratedRoot(n, closed, composed)


def gamma_composed(n: int, a: Arg, order: int) -> TSeries:
    w = order + 4 * n + 12
    cur = as_series(a, w)
    for _ in range(n):
        cur = root("asymmetric", "alpha-",
                   root("asymmetric", "beta-", cur, cur.order), cur.order)
    return cur.truncate(order)


def gamma_closed_inverse(n: int, a: Arg, order: int) -> TSeries:
    """1/gamma_n(a), asymmetric model."""
    w = order + 4 * n + 12
    t = tvar(w)
    q = q_asym(a, w)
    num = (t + q.shift(2 * n - 2)) * (t + q.shift(2 * n))
    den = (1 - t * t) * q.shift(2 * n - 2)
    return (num / den).truncate(order)


def beta_of_gamma_closed_inverse(n: int, a: Arg, order: int) -> TSeries:
    """1/beta_1(gamma_n(a)), asymmetric model."""
    w = order + 4 * n + 12
    t = tvar(w)
    q = q_asym(a, w)
    num = (t + q.shift(2 * n)) ** 2
    den = (1 - t * t) * q.shift(2 * n - 1)
    return (num / den).truncate(order)


def gamma_iterate(n: int, a: Arg, order: int) -> IteratedRoot:
    if n < 0:
        raise ValueError("gamma compositions are defined for n >= 0")
    closed = gamma_closed_inverse(n, a, order + 4 * n + 8).inverse().truncate(order)
    composed = gamma_composed(n, a, order)
    bad = closed.first_difference(composed)
    if bad is not None:
        raise ConsistencyError(
            f"gamma_{n} closed and composed forms differ first at t^{bad}"
        )
    return IteratedRoot(n, closed, composed)


def group_law_check(n: int, a: Arg, order: int) -> dict:
    """Group structure of the symmetric root compositions.

    Checks, all mod t^(order+1):
      * ladder: K(beta_m, beta_{m+1}) = 0 for -|n| <= m < |n| using the
        closed forms;
      * beta_{-1}(beta_1(a)) = a by direct composition;
      * the two roots of K(beta_{-1}(a), .) are exactly a and beta_{-2}(a)
        (the computable form of beta_1(beta_{-1}(a)) = a);
      * the three-term reciprocal recurrence at index n.
    """
    m_hi = abs(n)
    w = order + 2 * m_hi + 12
    checks: list[tuple[str, int | None]] = []

    ladder = {m: beta_closed(m, a, w) for m in range(-m_hi, m_hi + 1)}
    for m in range(-m_hi, m_hi):
        k = kernel_coeffs("symmetric", 1, ladder[m], ladder[m + 1], w).kernel
        bad = None if k.is_zero() else k.valuation
        checks.append((f"K(beta_{m}, beta_{m+1}) = 0", bad))

    b1 = root("symmetric", "beta-", as_series(a, w), w)
    back = root("symmetric", "beta+", b1, b1.order)
    diff = back - as_series(a, back.order)
    checks.append(("beta_-1(beta_1(a)) = a", None if diff.is_zero() else diff.valuation))

    if m_hi >= 1:
        t = tvar(w)
        bm1 = ladder[-1]
        bm2 = beta_closed(-2, a, w)
        qa, qb, qc = _quad_sym(bm1, t)
        sum_ok = qb + qa * (as_series(a, w) + bm2)
        prod_ok = qc - qa * as_series(a, w) * bm2
        checks.append(("roots of K(beta_-1, .) are {a, beta_-2}",
                       None if sum_ok.is_zero() and prod_ok.is_zero()
                       else (sum_ok + prod_ok).valuation))

    if abs(n) >= 2:
        t = tvar(w)
        lhs = _beta_closed_inverse(n, a, w)
        rhs = ((1 + t * t) / t) * _beta_closed_inverse(n - 1, a, w) \
            - _beta_closed_inverse(n - 2, a, w)
        diff = lhs - rhs
        checks.append((f"three-term recurrence at n={n}",
                       None if diff.is_zero() else diff.valuation))

    ok = all(bad is None for _name, bad in checks)
    return {"ok": ok, "checks": checks}


def mixed_inverse_check(a: Arg, b: Arg, order: int) -> dict:
    """alpha_1(beta_-1(a)) = a and beta_1(alpha_-1(b)) = b (asymmetric)."""
    w = order + 10
    bm = root("asymmetric", "beta+", as_series(a, w), w)
    lhs1 = _root_asym_a(bm, -1, bm.order)
    d1 = lhs1 - as_series(a, lhs1.order)
    am = root("asymmetric", "alpha+", as_series(b, w), w)
    lhs2 = _root_asym_b(am, -1, am.order)
    d2 = lhs2 - as_series(b, lhs2.order)
    return {
        "ok": d1.is_zero() and d2.is_zero(),
        "alpha_of_beta_bad": None if d1.is_zero() else d1.valuation,
        "beta_of_alpha_bad": None if d2.is_zero() else d2.valuation,
    }


# -- the Q / Qbar / P series -------------------------------------------------

def q_sym(a: Arg, order: int) -> TSeries:
    """Q(a) = 1/(x a^2) - y/(x a beta_1(a)) - y for the symmetric model."""
    w = order + 8
    t = tvar(w)
    s = as_series(a, w)
    b1 = root("symmetric", "beta-", s, w)
    res = (t * s * s).inverse() - (s * b1).inverse() - t
    return res.truncate(order)


def q_asym(a: Arg, order: int) -> TSeries:
    """Q(a) = 1/a - y/beta_1(a) - x for the asymmetric model."""
    w = order + 8
    t = tvar(w)
    s = as_series(a, w)
    b1 = root("asymmetric", "beta-", s, w)
    res = s.inverse() - t * b1.inverse() - t
    return res.truncate(order)


def qbar_asym(a: Arg, order: int) -> TSeries:
    """Qbar(a) = 1/beta_1(a) - y/a - x*y; satisfies Qbar*Q = t^3."""
    w = order + 8
    t = tvar(w)
    s = as_series(a, w)
    b1 = root("asymmetric", "beta-", s, w)
    res = b1.inverse() - t * s.inverse() - t * t
    return res.truncate(order)


def p_asym(b: Arg, order: int) -> TSeries:
    """P(b): the flat-boundary-style companion of Q at the composed argument.

    Computed as Q(alpha_1(b)) / (x*y); the division by t^2 is the
    normalization under which P enters the final walk generating function
    (at b = 1 it reproduces (1 - 3t^2 - sqrt((1-t^2)(1-5t^2))) / (2t)).
    The undivided composition itself is available as
    ``q_asym(root('asymmetric', 'alpha-', b, N), N)``.
    """
    w = order + 10
    s = root("asymmetric", "alpha-", as_series(b, w), w)
    return q_asym(s, w - 2).shift(-2).truncate(order)


def qpq_series(which: str, arg: Arg, order: int) -> TSeries:
    fn = {
        "Q_sym": q_sym,
        "Q_asym": q_asym,
        "Qbar_asym": qbar_asym,
        "P_asym": p_asym,
    }.get(which)
    if fn is None:
        raise ValueError(f"unknown series {which!r}")
    return fn(arg, order)


# -- residual verification ---------------------------------------------------

def residual_functional_eq(kind: str, p: int, a, b, order: int,
                           weighted=None) -> TSeries:
    """LHS - RHS of the column-construction equation at rational (a, b).

    The walk series f (or h) and its boundary specializations come from the
    dynamic-programming weighted series; the result must vanish identically
    mod t^(order+1).
    """
    from .walks import weighted_gf  # local import to keep modules decoupled

    a, b = Fraction(a), Fraction(b)
    w = weighted if weighted is not None else weighted_gf(kind, p, order)
    fab = w.series_at(a, b)
    f_lower = w.series_lower(a)
    f_upper = w.series_upper(b)
    t = tvar(order)
    horiz = t * ((a * b) ** p if kind == "symmetric" else a**p)
    ub = t * Fraction(b, a)
    da = t * Fraction(a, b)
    up_run = ub / (1 - ub)
    down_run = da / (1 - da)
    rhs = (1 + horiz * fab
           + horiz * up_run * (fab - f_upper)
           + horiz * down_run * (fab - f_lower))
    return fab - rhs


def residual_kernel_form(kind: str, p: int, a, b, order: int,
                         weighted=None) -> TSeries:
    """K*f - X - Y*f(a,ta) - Z*f(tb,b); an equivalent kernel-form residual."""
    from .walks import weighted_gf

    a, b = Fraction(a), Fraction(b)
    w = weighted if weighted is not None else weighted_gf(kind, p, order)
    coeffs = kernel_coeffs(kind, p, a, b, order)
    return (coeffs.kernel * w.series_at(a, b)
            - coeffs.free_term
            - coeffs.lower * w.series_lower(a)
            - coeffs.upper * w.series_upper(b))


# -- the script coefficient ladder (asymmetric solution) ----------------------

def script_coeffs(n: int, a: Arg, order: int) -> dict:
    """The coefficient sextuple of the asymmetric iteration at depth n.

    Evaluates the raw quotients of (X, Y, Z) at the composed roots, the
    intermediate ratio forms, and the simplified closed forms, and verifies
    that they all agree mod t^(order+1).  Any mismatch raises, since these
    are exact identities.
    """
    w = order + 4 * (n + 1) + 16
    t = tvar(w)
    g_n = gamma_composed(n, a, w)
    g_n1 = gamma_composed(n + 1, a, w)
    bg = root("asymmetric", "beta-", g_n, w)

    c1 = kernel_coeffs("asymmetric", 1, g_n, bg, w)
    c2 = kernel_coeffs("asymmetric", 1, g_n1, bg, w)
    x_n = -(c1.free_term / c1.lower)
    y_n = c1.upper / c1.lower
    z_n = c2.free_term / c2.upper
    a_n = c2.lower / c2.upper
    b_n = x_n + y_n * z_n
    c_n = y_n * a_n

    x_mid = (bg - t * g_n) / (t * t * g_n * g_n)
    y_mid = (bg / g_n) * ((bg - t * g_n) / (g_n - t * bg))
    z_mid = -((g_n1 - t * bg) / (t * t * g_n1 * bg))
    a_mid = (g_n1 / bg) * ((g_n1 - t * bg) / (bg - t * g_n1))

    q = q_asym(a, w)
    qn = q.shift(2 * n)
    qn2 = q.shift(2 * n - 2)
    x_simpl = (t + qn2) / t
    b_simpl = (t + qn2) * (t - qn) / (t * t)
    c_simpl = (g_n1 / g_n) * q * q * TSeries.t_power(4 * n - 2, w)

    inv_g = gamma_closed_inverse(n, a, w)
    inv_bg = beta_of_gamma_closed_inverse(n, a, w)
    inv_g1 = gamma_closed_inverse(n + 1, a, w)
    useful = [
        ("1/g_n - t/b(g_n) = t + t^2n Q", inv_g - t * inv_bg, t + qn),
        ("1/b(g_n) - t/g_n = t(t + t^2n Q)/(t^(2n-1) Q)",
         inv_bg - t * inv_g, t * (t + qn) / q.shift(2 * n - 1)),
        ("1/b(g_n) - t/g_n+1 = t(t + t^2n Q)", inv_bg - t * inv_g1, t * (t + qn)),
        ("1/g_n+1 - t/b(g_n) = t(t + t^2n Q)/(t^2n Q)",
         inv_g1 - t * inv_bg, t * (t + qn) / qn),
    ]
    ratios = [
        ("(b(g_n) - t g_n)/(g_n - t b(g_n)) = t^(2n-2) Q",
         (bg - t * g_n) / (g_n - t * bg), q.shift(2 * n - 2)),
        ("(g_n+1 - t b(g_n))/(b(g_n) - t g_n+1) = t^2n Q",
         (g_n1 - t * bg) / (bg - t * g_n1), q.shift(2 * n)),
        ("(b(g_n) - t g_n)/g_n^2 = t(t + t^(2n-2) Q)",
         (bg - t * g_n) / (g_n * g_n), t * (t + qn2)),
        ("(g_n+1 - t b(g_n))/(g_n g_n+1) = t^2(t + t^(2n-2) Q)",
         (g_n1 - t * bg) / (g_n * g_n1), (t * t) * (t + qn2)),
    ]

    pairs = [
        ("X_n raw = ratio form", x_n, x_mid),
        ("Y_n raw = ratio form", y_n, y_mid),
        ("Z_n raw = ratio form", z_n, z_mid),
        ("A_n raw = ratio form", a_n, a_mid),
        ("X_n = (x + t^(2n-2) Q)/x", x_n, x_simpl),
        ("B_n = (x + t^(2n-2) Q)(x - t^2n Q)/x^2", b_n, b_simpl),
        ("C_n = (g_n+1/g_n) t^(4n-2) Q^2", c_n, c_simpl),
    ]
    pairs += [(name, lhs, rhs) for name, lhs, rhs in useful]
    pairs += [(name, lhs, rhs) for name, lhs, rhs in ratios]

    for name, lhs, rhs in pairs:
        bad = lhs.truncate(min(lhs.order, order)).first_difference(
            rhs.truncate(min(rhs.order, order)))
        if bad is not None:
            raise ConsistencyError(f"script coefficient identity failed: {name} "
                                   f"(first difference at t^{bad})")
    return {
        "X": x_n.truncate(order),
        "Y": y_n.truncate(order),
        "Z": z_n.truncate(order),
        "A": a_n.truncate(order),
        "B": b_n.truncate(order),
        "C": c_n.truncate(order),
        "checked": [name for name, _l, _r in pairs],
    }


def raw_iterated_sum(a: Arg, order: int) -> TSeries:
    """H(a, t*a) assembled directly from the raw coefficient ladder.

    Sums B_n * prod(C_m, m < n) with the B/C taken from the raw quotients of
    (X, Y, Z) at the composed roots; term n has valuation >= 2n^2 so the sum
    truncates by valuation.
    """
    w = order + 8
    t = tvar(w)
    acc = TSeries.zero(w)
    prod = TSeries.constant(1, w)
    n = 0
    while True:
        g_n = gamma_composed(n, a, w)
        g_n1 = gamma_composed(n + 1, a, w)
        bg = root("asymmetric", "beta-", g_n, w)
        c1 = kernel_coeffs("asymmetric", 1, g_n, bg, w)
        c2 = kernel_coeffs("asymmetric", 1, g_n1, bg, w)
        x_n = -(c1.free_term / c1.lower)
        y_n = c1.upper / c1.lower
        z_n = c2.free_term / c2.upper
        a_n = c2.lower / c2.upper
        term = prod * (x_n + y_n * z_n)
        acc = acc + term
        val = term.valuation
        if val is not None and val > order and n > 0:
            break
        prod = prod * (y_n * a_n)
        n += 1
        if 2 * n * n > order + 4:
            break
    return acc.truncate(order)
