"""Exact arithmetic in prime fields F_p and extension fields F_{p^s}.

An element of F_{p^s} is a residue c_0 + c_1*x + ... + c_{s-1}*x^{s-1}
modulo a monic irreducible polynomial over F_p.  Internally every element
is a single integer code sum(c_i * p**i); codes make equality, hashing and
table indexing cheap, and the prime subfield embeds as the codes 0..p-1.

A FieldSpec builds discrete-log tables on first use, after which
multiplication, inversion and powers are O(1) lookups.  Field orders are
capped at 2**16 so whole-field exhaustive checks stay practical.

Text forms: a prime-field element prints as its decimal residue, an
extension element as a bracketed little-endian coefficient list such as
``[1,0,1]``.  A field prints as ``p^s:modulus``, e.g.
``2^6:[1,1,0,0,0,0,1]`` (empty modulus part for prime fields).
"""

from __future__ import annotations

from .errors import (
    CharNotTwo,
    DegreeMismatch,
    DivisionByZero,
    NotPrime,
    Reducible,
    TooLarge,
)
from .intmath import is_prime, prime_factors

MAX_ORDER = 1 << 16


# -- polynomial helpers on little-endian coefficient tuples over F_p --------

def _poly_mul_mod(a: tuple, b: tuple, modulus: tuple, p: int) -> tuple:
    """(a*b) mod modulus; all little-endian, modulus monic of degree s."""
    s = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for i in range(len(prod) - 1, s - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(s):
                prod[i - s + j] = (prod[i - s + j] - c * modulus[j]) % p
    return tuple(prod[:s])


def _poly_rem(num: list, den: tuple, p: int) -> list:
    """Remainder of num by monic den, little-endian, destructive on num."""
    d = len(den) - 1
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i]
        if c:
            num[i] = 0
            for j in range(d):
                num[i - d + j] = (num[i - d + j] - c * den[j]) % p
    return num[:d]


def poly_is_irreducible(modulus: tuple, p: int) -> bool:
    """Irreducibility over F_p by root scan plus trial division.

    A reducible polynomial of degree s has a monic factor of degree at
    most s//2, so checking roots (degree-1 factors) and dividing by every
    monic polynomial of degree 2..s//2 is a complete test.
    """
    s = len(modulus) - 1
    if s < 1 or modulus[-1] != 1:
        return False
    for a in range(p):
        acc = 0
        for c in reversed(modulus):
            acc = (acc * a + c) % p
        if acc == 0:
            return False
    for d in range(2, s // 2 + 1):
        for idx in range(p**d):
            den = []
            v = idx
            for _ in range(d):
                den.append(v % p)
                v //= p
            den.append(1)
            rem = _poly_rem(list(modulus), tuple(den), p)
            if not any(rem):
                return False
    return True


def _default_modulus(p: int, s: int) -> tuple:
    """Smallest monic irreducible of degree s, ordered by the base-p value
    of the non-leading coefficients."""
    for value in range(p**s):
        coeffs = []
        v = value
        for _ in range(s):
            coeffs.append(v % p)
            v //= p
        cand = tuple(coeffs) + (1,)
        if poly_is_irreducible(cand, p):
            return cand
    raise AssertionError(f"no irreducible of degree {s} over F_{p}")  # pragma: no cover


class FieldSpec:
    """A finite field F_{p^s} with integer-coded elements.

    Elements are integers in [0, q).  All arithmetic methods take and
    return codes; use :class:`FieldElement` (or :meth:`element`) for an
    operator-overloaded wrapper.
    """

    __slots__ = (
        "p", "s", "q", "modulus",
        "_exp", "_log", "_sqrt_tab", "_as_tab",
    )

    def __init__(self, p: int, s: int = 1, modulus=None):
        if not is_prime(p):
            raise NotPrime(f"characteristic {p} is not prime")
        if s < 1:
            raise DegreeMismatch(f"extension degree must be >= 1, got {s}")
        q = p**s
        if q > MAX_ORDER:
            raise TooLarge(f"field order {q} exceeds the cap {MAX_ORDER}")
        if s == 1:
            modulus = None
        else:
            if modulus is None:
                modulus = _default_modulus(p, s)
            else:
                modulus = tuple(int(c) % p for c in modulus)
                if len(modulus) != s + 1 or modulus[-1] != 1:
                    raise DegreeMismatch(
                        f"modulus must be monic of degree {s} "
                        f"({s + 1} coefficients)"
                    )
                if not poly_is_irreducible(modulus, p):
                    raise Reducible(f"modulus {list(modulus)} factors over F_{p}")
        self.p = p
        self.s = s
        self.q = q
        self.modulus = modulus
        self._exp = None
        self._log = None
        self._sqrt_tab = None
        self._as_tab = None

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.s == other.s
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.s, self.modulus))

    def __repr__(self):
        return f"FieldSpec({self.spec_text()!r})"

    # -- element coding --------------------------------------------------------

    def decode(self, a: int) -> tuple:
        """Little-endian coefficient tuple of length s."""
        if self.s == 1:
            return (a,)
        p = self.p
        out = []
        for _ in range(self.s):
            out.append(a % p)
            a //= p
        return tuple(out)

    def encode(self, coeffs) -> int:
        p = self.p
        acc = 0
        for c in reversed(list(coeffs)):
            acc = acc * p + (int(c) % p)
        return acc

    def from_int(self, n: int) -> int:
        """Embed an integer via the prime subfield."""
        return n % self.p

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise DegreeMismatch("element belongs to a different field")
            return value
        if isinstance(value, int):
            code = value % self.p if self.s == 1 else value
            if not 0 <= code < self.q:
                raise DegreeMismatch(f"code {value} outside [0, {self.q})")
            return FieldElement(self, code)
        return FieldElement(self, self.encode(value))

    # -- table construction -------------------------------------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a * b) % self.p
        return self.encode(
            _poly_mul_mod(self.decode(a), self.decode(b), self.modulus, self.p)
        )

    def _pow_raw(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            e >>= 1
        return r

    def _ensure_tables(self):
        if self._exp is not None:
            return
        q = self.q
        order = q - 1
        gen = 1
        if order > 1:
            factors = prime_factors(order)
            for g in range(2, q):
                if all(self._pow_raw(g, order // l) != 1 for l in factors):
                    gen = g
                    break
        exp = [1] * (2 * order if order else 1)
        log = [-1] * q
        log[1] = 0
        acc = 1
        for i in range(1, order):
            acc = self._mul_raw(acc, gen)
            exp[i] = acc
            log[acc] = i
        for i in range(order, len(exp)):
            exp[i] = exp[i - order]
        self._exp = exp
        self._log = log

    # -- arithmetic on codes ------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        da, db = self.decode(a), self.decode(b)
        return self.encode((x + y) % p for x, y in zip(da, db))

    def neg(self, a: int) -> int:
        if self.s == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        p = self.p
        return self.encode((-x) % p for x in self.decode(a))

    def sub(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is None:
            self._ensure_tables()
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self._exp is None:
            self._ensure_tables()
        return self._exp[self.q - 1 - self._log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        if self._exp is None:
            self._ensure_tables()
        order = self.q - 1
        if order == 0:
            return 1
        return self._exp[(self._log[a] * e) % order]

    def frobenius_sqrt(self, a: int) -> int:
        """The unique square root in characteristic 2: a**(2**(s-1))."""
        if self.p != 2:
            raise CharNotTwo(f"characteristic is {self.p}, not 2")
        b = a
        for _ in range(self.s - 1):
            b = self.mul(b, b)
        return b

    # -- square roots and quadratics -------------------------------------------------

    def _ensure_sqrt(self):
        if self._sqrt_tab is None:
            tab = [None] * self.q
            for y in range(self.q):
                c = self.mul(y, y)
                if tab[c] is None:
                    tab[c] = y
            self._sqrt_tab = tab

    def _ensure_as(self):
        # Solutions of z**2 + z = w in characteristic 2; half the w values
        # are reachable, each with the pair {z, z+1}.
        if self._as_tab is None:
            tab: dict[int, int] = {}
            for z in range(self.q):
                w = self.add(self.mul(z, z), z)
                tab.setdefault(w, z)
            self._as_tab = tab

    def sqrt_or_none(self, a: int):
        """A square root of a, or None (odd characteristic)."""
        self._ensure_sqrt()
        return self._sqrt_tab[a]

    def chi(self, a: int) -> int:
        """Quadratic character: 0 for zero, +1 for squares, -1 otherwise."""
        if a == 0:
            return 0
        if self.p == 2:
            return 1
        self._ensure_sqrt()
        return 1 if self._sqrt_tab[a] is not None else -1

    def solve_quadratic(self, b: int, c: int) -> tuple:
        """All y with y**2 + b*y = c, as a tuple of 0, 1 or 2 codes."""
        if self.p == 2:
            if b == 0:
                return (self.frobenius_sqrt(c),)
            self._ensure_as()
            w = self.mul(c, self.pow(self.inv(b), 2))
            z = self._as_tab.get(w)
            if z is None:
                return ()
            y = self.mul(b, z)
            return (y, self.add(y, b))
        # odd characteristic: complete the square
        half = self.inv(self.from_int(2))
        shift = self.mul(b, half)
        d = self.add(c, self.mul(shift, shift))
        if d == 0:
            return (self.neg(shift),)
        r = self.sqrt_or_none(d)
        if r is None:
            return ()
        return (self.sub(r, shift), self.sub(self.neg(r), shift))

    # -- text forms ----------------------------------------------------------------

    def element_text(self, a: int) -> str:
        if self.s == 1:
            return str(a)
        return "[" + ",".join(str(c) for c in self.decode(a)) + "]"

    def parse_element(self, text: str) -> int:
        text = text.strip()
        if text.startswith("["):
            if not text.endswith("]"):
                raise DegreeMismatch(f"malformed element text {text!r}")
            coeffs = [int(t) for t in text[1:-1].split(",")] if text != "[]" else []
            if len(coeffs) > self.s:
                raise DegreeMismatch(f"too many coefficients in {text!r}")
            coeffs += [0] * (self.s - len(coeffs))
            return self.encode(coeffs)
        code = int(text)
        if self.s == 1:
            return code % self.p
        if not 0 <= code < self.q:
            raise DegreeMismatch(f"code {code} outside [0, {self.q})")
        return code

    def spec_text(self) -> str:
        mod = "" if self.s == 1 else "[" + ",".join(map(str, self.modulus)) + "]"
        return f"{self.p}^{self.s}:{mod}"


class FieldElement:
    """Operator-overloaded wrapper around a FieldSpec and an element code."""

    __slots__ = ("field", "code")

    def __init__(self, field: FieldSpec, code: int):
        self.field = field
        self.code = code

    @property
    def coeffs(self) -> list:
        return list(self.field.decode(self.code))

    def _co(self, other) -> int:
        if isinstance(other, FieldElement):
            return other.code
        return self.field.from_int(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.code, self._co(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.code, self._co(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._co(other), self.code))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.code, self._co(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.code, self._co(other)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.from_int(other) and self.field.s == 1
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __repr__(self):
        return f"F{self.field.q}({self.field.element_text(self.code)})"


_FIELD_CACHE: dict = {}


def field_make(p: int, s: int = 1, modulus=None) -> FieldSpec:
    """Validated field constructor; instances with equal parameters are shared
    so their arithmetic tables are built once."""
    key = (p, s, tuple(modulus) if modulus is not None else None)
    spec = _FIELD_CACHE.get(key)
    if spec is None:
        spec = FieldSpec(p, s, modulus)
        _FIELD_CACHE[key] = spec
        _FIELD_CACHE.setdefault((p, s, spec.modulus), spec)
    return spec


def parse_field_text(text: str) -> FieldSpec:
    """Parse ``p``, ``p^s`` or ``p^s:[modulus]``."""
    text = text.strip()
    body, _, mod = text.partition(":")
    p_txt, _, s_txt = body.partition("^")
    p = int(p_txt)
    s = int(s_txt) if s_txt else 1
    mod = mod.strip()
    if not mod or s == 1:
        return field_make(p, s)
    if not (mod.startswith("[") and mod.endswith("]")):
        raise DegreeMismatch(f"malformed modulus text {mod!r}")
    coeffs = [int(t) for t in mod[1:-1].split(",")]
    return field_make(p, s, coeffs)


def frobenius_sqrt(field: FieldSpec, a: int) -> int:
    return field.frobenius_sqrt(a)
