"""Data values, data words and their canonical word types.

A word type records only how the positions of a word relate to each other:
the relative order of values for a dense ordered domain, or just which
positions hold equal values for an equality-only domain.  Types are encoded
as integer code sequences:

* dense: position i gets the 0-based rank of its value among the distinct
  values of the word (``3.9.7 -> 0.2.1``);
* equality: position i gets the id of its equality class, ids assigned in
  order of first occurrence (``7.7.2 -> 0.0.1``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class Domain(enum.Enum):
    DENSE = "dense"
    EQUALITY = "equality"

    @classmethod
    def parse(cls, text: str) -> "Domain":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown domain {text!r} (expected dense or equality)") from None


DataWord = tuple  # tuple[Fraction, ...]


def value(x) -> Fraction:
    """Exact data value from an int, Fraction or a ``p/q`` / decimal string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted as data values; pass a string")
    return Fraction(x)


def word(values: Iterable) -> tuple:
    return tuple(value(v) for v in values)


def parse_word(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    return tuple(Fraction(part.strip()) for part in text.split(","))


def format_word(w: Sequence[Fraction]) -> str:
    return ",".join(str(v) for v in w)


@dataclass(frozen=True, slots=True)
class WordType:
    domain: Domain
    codes: tuple

    def __len__(self) -> int:
        return len(self.codes)

    @property
    def classes(self) -> int:
        return max(self.codes) + 1 if self.codes else 0

    @property
    def has_ties(self) -> bool:
        return len(set(self.codes)) != len(self.codes)

    def __str__(self) -> str:
        return ".".join(map(str, self.codes)) if self.codes else "-"

    def __repr__(self) -> str:
        return f"WordType({self.domain.value}:{self})"


def _canonical(keys: Sequence, domain: Domain) -> tuple:
    if domain is Domain.DENSE:
        rank = {k: i for i, k in enumerate(sorted(set(keys)))}
        return tuple(rank[k] for k in keys)
    ids: dict = {}
    out = []
    for k in keys:
        if k not in ids:
            ids[k] = len(ids)
        out.append(ids[k])
    return tuple(out)


def type_of(w: Sequence, domain: Domain) -> WordType:
    return WordType(domain, _canonical(w, domain))


def empty_type(domain: Domain) -> WordType:
    return WordType(domain, ())


def parse_type(text: str, domain: Domain) -> WordType:
    """Parse ``0.2.1`` (or ``-`` for the empty type); rejects non-canonical codes."""
    text = text.strip()
    if text in ("-", ""):
        return WordType(domain, ())
    try:
        codes = tuple(int(part) for part in text.split("."))
    except ValueError:
        raise ValueError(f"malformed type code {text!r}") from None
    if any(c < 0 for c in codes) or _canonical(codes, domain) != codes:
        raise ValueError(f"type code {text!r} is not canonical for the {domain.value} domain")
    return WordType(domain, codes)


def project(t: WordType, positions: Sequence[int]) -> WordType:
    """Canonical type of the word read off at 0-based ``positions`` (repeats allowed)."""
    return WordType(t.domain, _canonical([t.codes[p] for p in positions], t.domain))


def restrict(t: WordType, keep: Iterable[int]) -> WordType:
    """Type of the subword at the 1-based positions in ``keep``, in increasing order."""
    return project(t, [p - 1 for p in sorted(set(keep))])


def realize(t: WordType) -> tuple:
    return tuple(Fraction(c) for c in t.codes)


@dataclass(frozen=True, slots=True)
class ExtensionChoice:
    """Where a new value goes relative to the classes of an existing type.

    ``eq``: equal to class ``index``; ``gap``: strictly inside open interval
    ``index`` of the dense order (interval 0 lies below every class);
    ``fresh``: a value unequal to everything (equality domain).
    """

    kind: str
    index: int = 0

    def __str__(self) -> str:
        if self.kind == "eq":
            return f"={self.index}"
        if self.kind == "gap":
            return f"gap{self.index}"
        return "fresh"


def eq_choice(c: int) -> ExtensionChoice:
    return ExtensionChoice("eq", c)


def gap_choice(g: int) -> ExtensionChoice:
    return ExtensionChoice("gap", g)


FRESH = ExtensionChoice("fresh")


def extensions(t: WordType) -> list:
    """All ways to append one value to a word of type ``t``.

    Dense choices come in increasing value order (gap 0, class 0, gap 1, ...).
    """
    m = t.classes
    if t.domain is Domain.DENSE:
        out = []
        for c in range(m):
            out.append(gap_choice(c))
            out.append(eq_choice(c))
        out.append(gap_choice(m))
        return out
    return [eq_choice(c) for c in range(m)] + [FRESH]


def extend(t: WordType, choice: ExtensionChoice) -> WordType:
    m = t.classes
    if choice.kind == "eq":
        if not 0 <= choice.index < m:
            raise ValueError(f"class {choice.index} out of range for {t}")
        return WordType(t.domain, t.codes + (choice.index,))
    if choice.kind == "gap":
        if t.domain is not Domain.DENSE or not 0 <= choice.index <= m:
            raise ValueError(f"invalid gap choice {choice} for {t!r}")
        g = choice.index
        return WordType(t.domain, tuple(c + 1 if c >= g else c for c in t.codes) + (g,))
    if t.domain is not Domain.EQUALITY:
        raise ValueError("fresh choices exist only in the equality domain")
    return WordType(t.domain, t.codes + (m,))


def class_values(w: Sequence[Fraction], domain: Domain) -> list:
    """Distinct values of ``w`` indexed by their class id in ``type_of(w)``."""
    if domain is Domain.DENSE:
        return sorted(set(w))
    seen: list = []
    for v in w:
        if v not in seen:
            seen.append(v)
    return seen


def value_for_choice(w: Sequence[Fraction], domain: Domain, choice: ExtensionChoice) -> Fraction:
    """A concrete value x such that ``type_of(w + (x,))`` realizes ``choice``.

    Gap values are midpoints, or one below/above the extremes.
    """
    vals = class_values(w, domain)
    if choice.kind == "eq":
        return vals[choice.index]
    if not vals:
        return Fraction(0)
    if choice.kind == "fresh":
        return max(vals) + 1
    g = choice.index
    if g == 0:
        return vals[0] - 1
    if g == len(vals):
        return vals[-1] + 1
    return (vals[g - 1] + vals[g]) / 2
