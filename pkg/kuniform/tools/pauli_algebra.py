# pauli_algebra.py

from dataclasses import dataclass
from functools import reduce
from typing import Iterable

from kuniform.tools.errors import PauliParseError, PauliSizeError

# Single-qubit letters as (x, z) bit pairs. The Y letter is the Hermitian Y = i·XZ.
LETTERS = {(0, 0): 'I', (1, 0): 'X', (0, 1): 'Z', (1, 1): 'Y'}
SIGN_PREFIX = {0: '+', 1: '+i', 2: '-', 3: '-i'}
PREFIX_SIGN = {'+': 0, '+i': 1, '-': 2, '-i': 3, '': 0, 'i': 1}


@dataclass(frozen=True)
class PauliWord:
    """
    n-qubit Pauli operator in binary symplectic form.

    The operator is i^phase_exp times the tensor product of the letters I, X, Y, Z,
    where qubit j carries X, Z or Y when bit j is set in `x_bits`, `z_bits` or
    both. Bit j belongs to qubit j, which is the j-th letter of the text form, and
    `phase_exp` is the exponent of the printed sign: "-YXYZ" has phase_exp 2.

    Attributes:
        n (int): Number of qubits.
        x_bits (int): X component, one bit per qubit.
        z_bits (int): Z component, one bit per qubit.
        phase_exp (int): Exponent of i in front of the letters, kept in {0, 1, 2, 3}.
            Hermitian words have phase_exp 0 or 2.
    """
    n: int
    x_bits: int = 0
    z_bits: int = 0
    phase_exp: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'phase_exp', self.phase_exp % 4)
        mask = (1 << self.n) - 1
        if self.x_bits & ~mask or self.z_bits & ~mask:
            raise PauliSizeError(f"bit vectors do not fit in {self.n} qubits")

    def __mul__(self, other: 'PauliWord') -> 'PauliWord':
        return multiply(self, other)

    def __str__(self) -> str:
        return to_string(self)

    @property
    def support(self) -> int:
        return self.x_bits | self.z_bits


def identity(n: int) -> PauliWord:
    return PauliWord(n)


def multiply(a: PauliWord, b: PauliWord) -> PauliWord:
    """
    Exact operator product a·b.

    Each Y letter is rewritten as i·XZ, the two X-before-Z forms are multiplied
    (every Z of `a` moved past an X of `b` costs a factor -1) and the Y letters of
    the result give back their i.

    Args:
        a (PauliWord): Left factor.
        b (PauliWord): Right factor.

    Returns:
        PauliWord: The product with XOR'ed bit vectors.

    Raises:
        PauliSizeError: If the words act on different qubit counts.

    Example:
        >>> to_string(multiply(from_string('X'), from_string('Z')))
        '-iY'
    """
    if a.n != b.n:
        raise PauliSizeError(f"cannot multiply a {a.n}-qubit word by a {b.n}-qubit word")
    x_bits, z_bits = a.x_bits ^ b.x_bits, a.z_bits ^ b.z_bits
    phase = (a.phase_exp + y_count(a) + b.phase_exp + y_count(b)
             + 2 * (a.z_bits & b.x_bits).bit_count() - (x_bits & z_bits).bit_count())
    return PauliWord(a.n, x_bits, z_bits, phase)


def product(words: Iterable[PauliWord]) -> PauliWord:
    """Left-to-right product of a non-empty sequence of words."""
    return reduce(multiply, words)


def weight(p: PauliWord) -> int:
    """Number of qubits carrying a non-identity letter."""
    return p.support.bit_count()


def y_count(p: PauliWord) -> int:
    return (p.x_bits & p.z_bits).bit_count()


def sign_exp(p: PauliWord) -> int:
    """Exponent of i in front of the letter string."""
    return p.phase_exp


def xz_phase_exp(p: PauliWord) -> int:
    """Exponent of i when every Y is expanded to i·XZ, giving i^e · ∏ X^x Z^z."""
    return (p.phase_exp + y_count(p)) % 4


def is_hermitian(p: PauliWord) -> bool:
    return sign_exp(p) % 2 == 0


def commutes(a: PauliWord, b: PauliWord) -> bool:
    """True when the symplectic inner product of a and b vanishes."""
    if a.n != b.n:
        raise PauliSizeError(f"cannot compare a {a.n}-qubit word with a {b.n}-qubit word")
    return ((a.x_bits & b.z_bits).bit_count() + (a.z_bits & b.x_bits).bit_count()) % 2 == 0


def letters(p: PauliWord) -> str:
    return ''.join(LETTERS[((p.x_bits >> j) & 1, (p.z_bits >> j) & 1)] for j in range(p.n))


def to_string(p: PauliWord) -> str:
    """
    Text form: sign prefix ("+", "-", "+i", "-i") followed by one letter per qubit.

    Example:
        >>> to_string(PauliWord(4, x_bits=0b0010, z_bits=0b1101))
        '+ZXZZ'
    """
    return SIGN_PREFIX[sign_exp(p)] + letters(p)


def from_string(s: str) -> PauliWord:
    """
    Parses `[+|-|+i|-i]?[IXYZ]+`; an omitted sign means "+". The unicode minus
    sign is accepted as "-".

    Raises:
        PauliParseError: On an empty body or a character outside {I, X, Y, Z}.
    """
    text = s.strip().replace('−', '-')
    body = text.lstrip('+-')
    head = text[:len(text) - len(body)]
    if body.startswith('i'):
        head, body = head + 'i', body[1:]
    if head not in PREFIX_SIGN:
        raise PauliParseError(f"invalid sign prefix {head!r} in {s!r}")
    if not body:
        raise PauliParseError(f"empty Pauli word in {s!r}")

    x_bits = z_bits = 0
    for j, letter in enumerate(body):
        if letter not in 'IXYZ':
            raise PauliParseError(f"invalid Pauli letter {letter!r} at position {j} in {s!r}")
        if letter in 'XY':
            x_bits |= 1 << j
        if letter in 'ZY':
            z_bits |= 1 << j
    return PauliWord(len(body), x_bits, z_bits, PREFIX_SIGN[head])
