"""Linear feedback shift registers over F_p and the solution-count keystream.

A register of length r with taps q_1..q_r produces a_n = -(q_1*a_{n-1} +
... + q_r*a_{n-r}) mod p and outputs a_0, a_1, ... in order.  Its
generating function g(x) = sum a_i x**i satisfies g(x) * R(x) = L(x) with
R(x) = 1 + q_1 x + ... + q_r x**r and deg L < r, which pins the
correspondence between registers with q_r != 0 and such rational
functions.  The keystream map sends a polynomial in Z[x] with rational
roots to its count sequence N_0..N_u.
"""

from __future__ import annotations

from dataclasses import dataclass

from .counting import DEFAULT_CAP, count_sequence
from .errors import DegenerateTaps, DegreeViolation
from .padic import PAdicContext
from .polynomials import DensePoly, FactoredPoly
from .ratfunc import RationalFunctionT


class Lfsr:
    """Mutable register state; stepping is single-owner, everything else copies.

    `init` holds the first r outputs a_0..a_{r-1}; the live state is the
    sliding window of the next r outputs.
    """

    def __init__(self, p: int, taps: list[int] | tuple[int, ...], init: list[int] | tuple[int, ...]):
        if len(taps) < 1:
            raise ValueError("register length must be >= 1")
        if len(init) != len(taps):
            raise ValueError("state length must equal the register length")
        self.p = p
        self.taps = tuple(q % p for q in taps)
        self._window = [a % p for a in init]

    @property
    def r(self) -> int:
        return len(self.taps)

    @property
    def state(self) -> tuple[int, ...]:
        """Current cell contents: the next r outputs, oldest first."""
        return tuple(self._window)

    def copy(self) -> "Lfsr":
        return Lfsr(self.p, self.taps, self._window)

    def step(self) -> int:
        """Emit the oldest cell and feed back the new element."""
        out = self._window[0]
        feedback = -sum(
            q * a for q, a in zip(self.taps, reversed(self._window))
        ) % self.p
        self._window = self._window[1:] + [feedback]
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Lfsr):
            return NotImplemented
        return (self.p, self.taps, self.state) == (other.p, other.taps, other.state)

    def __repr__(self) -> str:
        return f"Lfsr(p={self.p}, taps={self.taps}, state={self.state})"


def lfsr_run(register: Lfsr, steps: int) -> list[int]:
    """The next `steps` outputs (advances the register)."""
    return [register.step() for _ in range(steps)]


def period_of(register: Lfsr) -> int:
    """Eventual period of the output sequence, by state-cycle detection.

    The state is a window of the output sequence, so the cycle length of
    the state orbit equals the eventual output period.
    """
    sim = register.copy()
    seen: dict[tuple[int, ...], int] = {}
    i = 0
    state = sim.state
    while state not in seen:
        seen[state] = i
        sim.step()
        state = sim.state
        i += 1
    return i - seen[state]


def lfsr_generating_function(register: Lfsr) -> RationalFunctionT:
    """g = L/R over F_p with R = 1 + q_1 x + ... + q_r x**r and deg L < r.

    Raw coefficients in {0..p-1}; the canonical reduction over Q does not
    apply mod p.
    """
    if register.taps[-1] == 0:
        raise DegenerateTaps("q_r = 0: no length-r rational correspondence")
    p = register.p
    r = register.r
    a = register.state
    den = (1,) + register.taps
    num = [
        (a[n] + sum(register.taps[i - 1] * a[n - i] for i in range(1, n + 1))) % p
        for n in range(r)
    ]
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return RationalFunctionT(tuple(num), den)


def series_mod_p(rf: RationalFunctionT, p: int, count: int) -> list[int]:
    """First `count` power-series coefficients of rf over F_p."""
    den = [c % p for c in rf.denominator]
    num = [c % p for c in rf.numerator]
    if den[0] == 0:
        raise DegreeViolation("denominator has zero constant term mod p")
    inv0 = pow(den[0], -1, p)
    out: list[int] = []
    for k in range(count):
        c = num[k] if k < len(num) else 0
        for j in range(1, min(k, len(den) - 1) + 1):
            c -= den[j] * out[k - j]
        out.append(c * inv0 % p)
    return out


def lfsr_from_rational(g: RationalFunctionT, p: int) -> Lfsr:
    """The unique register with q_r != 0 whose generating function is g.

    Requires deg(numerator) < deg(denominator) = r with a nonzero
    degree-r denominator coefficient mod p (otherwise the sequence is
    only eventually periodic and no length-r register realizes it).
    """
    num = [c % p for c in g.numerator]
    den = [c % p for c in g.denominator]
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    while len(den) > 1 and den[-1] == 0:
        den.pop()
    r = len(den) - 1
    if r < 1 or den[-1] == 0:
        raise DegreeViolation("denominator must have degree >= 1 mod p")
    if den[0] == 0:
        raise DegreeViolation("denominator has zero constant term mod p")
    if len(num) - 1 >= r and any(num):
        raise DegreeViolation("numerator degree must be below denominator degree")
    inv0 = pow(den[0], -1, p)
    taps = [den[i] * inv0 % p for i in range(1, r + 1)]
    init = series_mod_p(RationalFunctionT(tuple(num), tuple(den)), p, r)
    return Lfsr(p, taps, init)


# ---------------------------------------------------------------------------
# the keystream map
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Keystream:
    """The finite sequence N_0..N_u extracted from one polynomial and prime."""

    p: int
    u: int
    values: tuple[int, ...]

    def to_text(self) -> str:
        """Wire format: decimal big integers, one per line."""
        return "\n".join(str(v) for v in self.values)

    def to_bytes(self) -> bytes:
        return self.to_text().encode("ascii")

    def to_json(self) -> dict:
        return {"p": str(self.p), "u": self.u, "values": [str(v) for v in self.values]}


def keystream(
    f: DensePoly | FactoredPoly,
    ctx: PAdicContext,
    u: int,
    method: str = "tree",
    cap: int = DEFAULT_CAP,
) -> Keystream:
    """N_0..N_u through the full pipeline (or the brute-force oracle)."""
    seq = count_sequence(f, ctx, u, method=method, cap=cap)
    return Keystream(p=ctx.p, u=u, values=seq.counts)
