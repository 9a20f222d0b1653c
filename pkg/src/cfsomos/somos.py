"""Two-sided Somos windows, divisibility ladders, and their identities.

A Somos spec of width k relates terms k apart through bilinear products:
y_h y_{h+k} = sum of c_i y_{h+i} y_{h+k-i} over gaps i = 1..len(coeffs).
The all-ones coefficient list of length floor(k/2) gives the classical
k-Somos recursion.  Windows are two-sided maps from integer index to
exact rationals; extension in either direction divides by the window
edge, and a zero term is recorded and then halts that direction rather
than poisoning the rest of the window.

The divisibility ladder W_{h-2}W_{h+2} = W_2^2 W_{h-1}W_{h+1}
- W_1 W_3 W_h^2 grows from four seed values; indices reflect through
zero antisymmetrically (W_0 = 0, W_{-h} = -W_h).  Ward's three-term
identity, its denominator-sequence analogue, and the mixed four-term
variant are all checked exactly over explicit h-ranges.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .poly import format_rational, parse_rational

Rat = Fraction | int


def _fr(x: Rat) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Sequence:
    """A contiguous window of exact rational values.

    values[i] sits at absolute index lo + i.  halt_lo / halt_hi record
    the index of the zero pivot that stopped generation on that side,
    when one did.
    """

    lo: int
    values: tuple[Fraction, ...]
    provenance: str = "supplied"
    halt_lo: Optional[int] = None
    halt_hi: Optional[int] = None

    def __post_init__(self) -> None:
        if not self.values:
            raise ValueError("empty window")
        object.__setattr__(self, "values", tuple(_fr(v) for v in self.values))

    @property
    def hi(self) -> int:
        return self.lo + len(self.values) - 1

    def __getitem__(self, i: int) -> Fraction:
        if not self.lo <= i <= self.hi:
            raise KeyError(i)
        return self.values[i - self.lo]

    def __contains__(self, i: int) -> bool:
        return self.lo <= i <= self.hi

    def indices(self) -> range:
        return range(self.lo, self.hi + 1)

    def window(self, lo: int, hi: int) -> "Sequence":
        """The sub-window [lo, hi], which must lie inside this one."""
        if lo > hi:
            raise ValueError("empty request")
        if lo < self.lo or hi > self.hi:
            raise KeyError((lo, hi))
        return Sequence(
            lo=lo,
            values=self.values[lo - self.lo : hi - self.lo + 1],
            provenance=self.provenance,
            halt_lo=self.halt_lo,
            halt_hi=self.halt_hi,
        )

    def to_json(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "values": [format_rational(v) for v in self.values],
        }

    @classmethod
    def from_json(cls, record: dict) -> "Sequence":
        values = tuple(parse_rational(str(v)) for v in record["values"])
        seq = cls(lo=int(record["lo"]), values=values)
        if seq.hi != int(record["hi"]):
            raise ValueError("hi does not match lo + len(values) - 1")
        return seq


@dataclass(frozen=True)
class SomosSpec:
    """Width, bilinear coefficients by gap, and the seed window.

    coeffs[i-1] multiplies y_{h+i} y_{h+k-i}; at most floor(k/2) gaps
    make sense since gap i and gap k-i pair the same terms.  seeds are
    placed at indices 0..k-1.
    """

    width: int
    coeffs: tuple[Fraction, ...]
    seeds: tuple[Fraction, ...]

    def __init__(
        self,
        width: int,
        coeffs: Optional[Iterable[Rat]] = None,
        seeds: Optional[Iterable[Rat]] = None,
    ) -> None:
        if width < 4:
            raise ValueError("width must be at least 4")
        cs = (
            tuple(_fr(c) for c in coeffs)
            if coeffs is not None
            else (Fraction(1),) * (width // 2)
        )
        if not 1 <= len(cs) <= width // 2:
            raise ValueError(f"need between 1 and {width // 2} coefficients")
        ss = (
            tuple(_fr(s) for s in seeds)
            if seeds is not None
            else (Fraction(1),) * width
        )
        if len(ss) != width:
            raise ValueError(f"need exactly {width} seeds")
        object.__setattr__(self, "width", width)
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "seeds", ss)

    def combination(self, fetch, h: int) -> Fraction:
        """sum of c_i y_{h+i} y_{h+k-i}, terms fetched by absolute index."""
        k = self.width
        return sum(
            (c * fetch(h + i) * fetch(h + k - i) for i, c in enumerate(self.coeffs, 1)),
            Fraction(0),
        )


def somos_generate(spec: SomosSpec, lo: int, hi: int) -> Sequence:
    """Extend the seed window over [lo, hi], dividing outward exactly.

    Forward terms solve the relation for y_{h+k}, backward terms for
    y_h.  A zero pivot (an edge divisor, or a freshly produced zero
    term) halts that direction; the returned window is the requested
    range clipped to what was reachable.
    """
    if lo > hi:
        raise ValueError("lo must not exceed hi")
    k = spec.width
    vals = {i: s for i, s in enumerate(spec.seeds)}
    cur_lo, cur_hi = 0, k - 1
    halt_lo: Optional[int] = None
    halt_hi: Optional[int] = None
    while cur_hi < hi and halt_hi is None:
        j = cur_hi + 1
        pivot = vals[j - k]
        if pivot == 0:
            halt_hi = j - k
            break
        vals[j] = spec.combination(vals.__getitem__, j - k) / pivot
        cur_hi = j
        if vals[j] == 0:
            halt_hi = j
    while cur_lo > lo and halt_lo is None:
        j = cur_lo - 1
        pivot = vals[j + k]
        if pivot == 0:
            halt_lo = j + k
            break
        vals[j] = spec.combination(vals.__getitem__, j) / pivot
        cur_lo = j
        if vals[j] == 0:
            halt_lo = j
    out_lo, out_hi = max(lo, cur_lo), min(hi, cur_hi)
    if out_lo > out_hi:
        raise ValueError(
            f"window [{lo}, {hi}] unreachable: generation stopped at "
            f"[{cur_lo}, {cur_hi}]"
        )
    return Sequence(
        lo=out_lo,
        values=tuple(vals[i] for i in range(out_lo, out_hi + 1)),
        provenance="generated",
        halt_lo=halt_lo,
        halt_hi=halt_hi,
    )


def somos_check(spec: SomosSpec, seq: Sequence) -> bool:
    """Whether every fully-windowed index satisfies the spec's relation."""
    k = spec.width
    for h in range(seq.lo, seq.hi - k + 1):
        if seq[h] * seq[h + k] != spec.combination(seq.__getitem__, h):
            return False
    return True


def integrality_scan(seq: Sequence) -> Optional[int]:
    """The index of the fractional value nearest zero, or None.

    Ties between +i and -i report the positive index.
    """
    for i in sorted(seq.indices(), key=lambda i: (abs(i), i < 0)):
        if seq[i].denominator != 1:
            return i
    return None


@dataclass(frozen=True)
class EDSSpec:
    """Four seed values W_1..W_4 for the width-4 divisibility ladder."""

    w1: Fraction
    w2: Fraction
    w3: Fraction
    w4: Fraction

    def __post_init__(self) -> None:
        for name in ("w1", "w2", "w3", "w4"):
            value = _fr(getattr(self, name))
            if value == 0:
                raise ValueError("seed values must be nonzero")
            object.__setattr__(self, name, value)


def eds_generate(spec: EDSSpec, n: int) -> Sequence:
    """Terms W_1..W_n via W_{h-2}W_{h+2} = W_2^2 W_{h-1}W_{h+1} - W_1W_3 W_h^2.

    A zero term is produced, recorded as the halt index, and stops the
    run there; so does a zero divisor four back.
    """
    if n < 1:
        raise ValueError("need at least one term")
    vals = {1: spec.w1, 2: spec.w2, 3: spec.w3, 4: spec.w4}
    a, b = spec.w2**2, spec.w1 * spec.w3
    hi = min(n, 4)
    halt: Optional[int] = None
    j = 5
    while j <= n:
        if vals[j - 4] == 0:
            halt = j - 4
            break
        vals[j] = (a * vals[j - 1] * vals[j - 3] - b * vals[j - 2] ** 2) / vals[j - 4]
        hi = j
        if vals[j] == 0:
            halt = j
            break
        j += 1
    return Sequence(
        lo=1,
        values=tuple(vals[i] for i in range(1, hi + 1)),
        provenance="generated",
        halt_hi=halt,
    )


def eds_lookup(W: Sequence, i: int) -> Fraction:
    """W_i, reflecting antisymmetrically through zero when needed."""
    if i == 0:
        return Fraction(0)
    if i in W:
        return W[i]
    if -i in W:
        return -W[-i]
    raise KeyError(i)


def eds_window(W: Sequence, lo: int, hi: int) -> Sequence:
    """Materialize the antisymmetric extension of W over [lo, hi]."""
    if lo > hi:
        raise ValueError("empty request")
    return Sequence(
        lo=lo,
        values=tuple(eds_lookup(W, i) for i in range(lo, hi + 1)),
        provenance=W.provenance,
    )


def ward_identity(seq: Sequence, m: int, n: int, h_range: Iterable[int]) -> bool:
    """W_{h-m}W_{h+m}W_n^2 = W_{h-n}W_{h+n}W_m^2 - W_{m-n}W_{m+n}W_h^2."""
    W = lambda i: eds_lookup(seq, i)
    ok = True
    for h in h_range:
        lhs = W(h - m) * W(h + m) * W(n) ** 2
        rhs = W(h - n) * W(h + n) * W(m) ** 2 - W(m - n) * W(m + n) * W(h) ** 2
        ok &= lhs == rhs
    return ok


def swart_vdp_identity(
    A: Sequence, W: Sequence, m: int, n: int, h_range: Iterable[int]
) -> bool:
    """A_{h-m}A_{h+m}W_n^2 = W_m^2 A_{h-n}A_{h+n} - W_{m-n}W_{m+n}A_h^2."""
    Wf = lambda i: eds_lookup(W, i)
    ok = True
    for h in h_range:
        lhs = A[h - m] * A[h + m] * Wf(n) ** 2
        rhs = Wf(m) ** 2 * A[h - n] * A[h + n] - Wf(m - n) * Wf(m + n) * A[h] ** 2
        ok &= lhs == rhs
    return ok


def identity21(A: Sequence, W: Sequence, m: int, h_range: Iterable[int]) -> bool:
    """W_1W_2 A_{h-m}A_{h+m+1} = W_mW_{m+1} A_{h-1}A_{h+2} - W_{m-1}W_{m+2} A_hA_{h+1}.

    Holds when A is the denominator chain of the curve W belongs to
    (A satisfies the width-4 relation with alpha = W_2^2, beta =
    -W_1W_3); m = 2 specializes it to a width-5 bilinear relation.
    """
    Wf = lambda i: eds_lookup(W, i)
    ok = True
    for h in h_range:
        lhs = Wf(1) * Wf(2) * A[h - m] * A[h + m + 1]
        rhs = (
            Wf(m) * Wf(m + 1) * A[h - 1] * A[h + 2]
            - Wf(m - 1) * Wf(m + 2) * A[h] * A[h + 1]
        )
        ok &= lhs == rhs
    return ok


def hone_map(
    alpha: Rat, beta: Rat, e_prev: Rat, e_cur: Rat
) -> tuple[Fraction, Fraction]:
    """One step of e_{h+1} = (alpha + beta/e_h) / (e_{h-1}e_h), with J.

    Returns (e_next, J) where J = e_{h-1}e_h + alpha(1/e_{h-1} + 1/e_h)
    + beta/(e_{h-1}e_h) is constant along orbits.
    """
    alpha, beta = _fr(alpha), _fr(beta)
    ep, ec = _fr(e_prev), _fr(e_cur)
    if ep == 0 or ec == 0:
        raise ValueError("the map needs nonzero inputs")
    e_next = (alpha + beta / ec) / (ep * ec)
    J = ep * ec + alpha * (1 / ep + 1 / ec) + beta / (ep * ec)
    return e_next, J


def _fit_width4(z: Sequence) -> tuple[Fraction, Fraction]:
    """Solve z_{j-2}z_{j+2} = a z_{j-1}z_{j+1} + b z_j^2 from two windows."""
    rows = []
    for j in (z.lo + 2, z.lo + 3):
        rows.append((z[j - 1] * z[j + 1], z[j] ** 2, z[j - 2] * z[j + 2]))
    (m1, k1, l1), (m2, k2, l2) = rows
    det = m1 * k2 - m2 * k1
    if det == 0:
        raise ValueError("degenerate fitting system: the windows do not "
                         "determine the coefficients")
    a = (l1 * k2 - l2 * k1) / det
    b = (m1 * l2 - m2 * l1) / det
    for j in range(z.lo + 2, z.hi - 1):
        if z[j - 2] * z[j + 2] != a * z[j - 1] * z[j + 1] + b * z[j] ** 2:
            raise ValueError(
                f"fitted relation fails at index {j}: not a width-4 window"
            )
    return a, b


def somos5_split(
    B: Sequence,
) -> tuple[Sequence, Sequence, tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]]:
    """Split a width-5 window into its even and odd width-4 halves.

    The half taken at indices of parity p is reindexed by j -> B_{2j+p}.
    Each half's coefficients (a, b) in z_{j-2}z_{j+2} = a z_{j-1}z_{j+1}
    + b z_j^2 are solved from its first two windows and verified on all
    the rest.
    """
    if len(B.values) < 14:
        raise ValueError("need at least 14 terms to fit and verify the halves")
    halves = []
    for parity in (0, 1):
        lo_j = -((B.lo - parity) // -2)  # ceil division
        hi_j = (B.hi - parity) // 2
        values = tuple(B[2 * j + parity] for j in range(lo_j, hi_j + 1))
        halves.append(Sequence(lo=lo_j, values=values, provenance=B.provenance))
    even, odd = halves
    return even, odd, (_fit_width4(even), _fit_width4(odd))


def eds_divisibility(W: Sequence, pairs: Iterable[tuple[int, int]]) -> bool:
    """W_a | W_b for each (a, b) with a | b, given W_1 = 1 and W_2 | W_4.

    The window must hold integer terms satisfying the width-4 ladder;
    any precondition failure raises rather than returning False.
    """
    if W.lo > 1 or W.hi < 4:
        raise ValueError("window must cover indices 1..4")
    if any(v.denominator != 1 for v in W.values):
        raise ValueError("terms must be integers")
    if W[1] != 1:
        raise ValueError("W_1 must be 1")
    if W[2] == 0 or W[4] % W[2] != 0:
        raise ValueError("W_2 must divide W_4")
    a, b = W[2] ** 2, W[1] * W[3]
    for h in range(W.lo + 2, W.hi - 1):
        if W[h - 2] * W[h + 2] != a * W[h - 1] * W[h + 1] - b * W[h] ** 2:
            raise ValueError(f"ladder fails at index {h}: not a divisibility sequence")
    ok = True
    for i, j in pairs:
        if i == 0 or j % i != 0:
            raise ValueError(f"pair ({i}, {j}) does not have {i} dividing {j}")
        wi, wj = eds_lookup(W, i), eds_lookup(W, j)
        if wi == 0:
            raise ValueError(f"zero term at index {i}")
        ok &= (wj / wi).denominator == 1
    return ok
