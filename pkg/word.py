# word.py
"""
Words in a free group over the numbered alphabet 1..n.

A letter k > 0 is generator k, -k its formal inverse. Every Word is kept
freely reduced; the empty Word is the identity. Human-readable generator
names live in fpres.Presentation, never here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence, Tuple

from errors import MalformedLetterError

Letter = int


def _reduce(raw: Iterable[int]) -> Tuple[int, ...]:
    stack: List[int] = []
    for x in raw:
        x = int(x)
        if x == 0:
            raise MalformedLetterError("letter index 0 is not a generator")
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


@dataclass(frozen=True, init=False)
class Word:
    letters: Tuple[int, ...]

    def __init__(self, letters: Iterable[int] = ()):
        object.__setattr__(self, "letters", _reduce(letters))

    @classmethod
    def identity(cls) -> "Word":
        return cls(())

    @classmethod
    def _trusted(cls, letters: Tuple[int, ...]) -> "Word":
        # caller guarantees `letters` is already freely reduced
        w = object.__new__(cls)
        object.__setattr__(w, "letters", letters)
        return w

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, e: int) -> "Word":
        if e < 0:
            return invert(self) ** (-e)
        core, conj = cyclic_reduce(self)
        return concat(concat(conj, Word._trusted(core.letters * e)), invert(conj))

    def __repr__(self) -> str:
        return f"Word({list(self.letters)})"

    def max_generator(self) -> int:
        return max((abs(x) for x in self.letters), default=0)

    def syllables(self) -> List[Tuple[int, int]]:
        """Run-length form: [(generator, exponent), ...], e.g. c*d^2 -> [(3, 1), (4, 2)]."""
        out: List[Tuple[int, int]] = []
        for x in self.letters:
            g, e = abs(x), (1 if x > 0 else -1)
            if out and out[-1][0] == g:
                out[-1] = (g, out[-1][1] + e)
            else:
                out.append((g, e))
        return out


def free_reduce(raw: Sequence[int]) -> Word:
    return Word(raw)


def invert(w: Word) -> Word:
    return Word._trusted(tuple(-x for x in reversed(w.letters)))


def concat(u: Word, v: Word) -> Word:
    a, b = u.letters, v.letters
    k = 0
    m = min(len(a), len(b))
    while k < m and a[len(a) - 1 - k] == -b[k]:
        k += 1
    return Word._trusted(a[: len(a) - k] + b[k:])


def cyclic_reduce(w: Word) -> Tuple[Word, Word]:
    """Return (core, conjugator) with w = conjugator * core * conjugator^-1."""
    x = w.letters
    i, j = 0, len(x) - 1
    while i < j and x[i] == -x[j]:
        i += 1
        j -= 1
    return Word._trusted(x[i : j + 1]), Word._trusted(x[:i])


def is_cyclically_reduced(w: Word) -> bool:
    return len(w) < 2 or w.letters[0] != -w.letters[-1]


def commutator(u: Word, v: Word) -> Word:
    return concat(concat(invert(u), invert(v)), concat(u, v))


def exponent_vector(w: Word, n: int) -> Tuple[int, ...]:
    vec = [0] * n
    for x in w.letters:
        g = abs(x)
        if g > n:
            raise MalformedLetterError(f"letter {x} outside alphabet of size {n}")
        vec[g - 1] += 1 if x > 0 else -1
    return tuple(vec)


def substitute(w: Word, images: dict) -> Word:
    """Replace generator g by images[g] (a Word) wherever it occurs; others stay."""
    out: List[int] = []
    for x in w.letters:
        img = images.get(abs(x))
        if img is None:
            out.append(x)
        elif x > 0:
            out.extend(img.letters)
        else:
            out.extend(-y for y in reversed(img.letters))
    return Word(out)


def least_rotation(letters: Sequence[int]) -> int:
    """Booth's algorithm: start index of the lexicographically least rotation."""
    s = list(letters) * 2
    n = len(letters)
    if n == 0:
        return 0
    f = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % n


def cyclic_key(w: Word) -> Tuple[int, ...]:
    """Canonical representative of w up to rotation and inversion."""
    if not is_cyclically_reduced(w):
        w = cyclic_reduce(w)[0]
    fwd = w.letters
    bwd = invert(w).letters
    if not fwd:
        return ()
    i = least_rotation(fwd)
    j = least_rotation(bwd)
    a = fwd[i:] + fwd[:i]
    b = bwd[j:] + bwd[:j]
    return min(a, b)
