"""Letters, attaching words, and the dihedral alignment algebra.

An attaching word is a tuple of letters ``(edge_id, sign)`` with sign ``+1``
or ``-1``.  Cellular maps carry, for each face, an alignment ``(rot, refl)``
describing how the image word of the source face sits inside the attaching
word of the target face:

    apply_edge_map(word_f)  ==  act((rot, refl), word_g)

where ``act`` rotates the target word left by ``rot`` and, when ``refl`` is
set, inverts it.  Compositions and inverses of alignments form a dihedral
group on each word length; the helpers here implement that algebra plus the
induced index maps on letters and corners.  Corner ``i`` of a face of length
``L`` sits between letters ``i-1`` and ``i`` (mod ``L``), i.e. at the start
vertex of letter ``i``.
"""

from __future__ import annotations

Letter = tuple[int, int]
Word = tuple[Letter, ...]
Transform = tuple[int, int]

IDENTITY: Transform = (0, 0)


def flip(letter: Letter) -> Letter:
    return (letter[0], -letter[1])


def invert_word(word: Word) -> Word:
    """The word read backwards with letters inverted."""
    return tuple(flip(x) for x in reversed(word))


def rotate_word(word: Word, r: int) -> Word:
    """Rotate left by ``r``: position i picks up ``word[(i + r) % L]``."""
    n = len(word)
    if n == 0:
        return word
    r %= n
    return word[r:] + word[:r]


def act(t: Transform, word: Word) -> Word:
    r, refl = t
    out = rotate_word(word, r)
    return invert_word(out) if refl else out


def letter_image(t: Transform, i: int, length: int) -> tuple[int, int]:
    """Index and sign of the target letter matched with source letter ``i``.

    When ``apply(word_f) == act(t, word_g)``, source letter ``i`` equals the
    returned target letter (inverted when the returned sign is ``-1``).
    """
    r, refl = t
    if refl:
        return (r + length - 1 - i) % length, -1
    return (i + r) % length, 1


def corner_image(t: Transform, i: int, length: int) -> int:
    """Index of the target corner matched with source corner ``i``."""
    r, refl = t
    if refl:
        return (r + length - i) % length
    return (i + r) % length


def compose(t1: Transform, t2: Transform, length: int) -> Transform:
    """Alignment with ``act(compose(t1, t2), w) == act(t1, act(t2, w))``.

    As an identification chain a->b->c (t1: a->b, t2: b->c) this is t_ac:
    letter_image(t_ac, i) tracks letter_image(t2, letter_image(t1, i)).
    """
    r1, p1 = t1
    r2, p2 = t2
    if length == 0:
        return (0, p1 ^ p2)
    r = (r2 - r1) % length if p2 else (r1 + r2) % length
    return (r, p1 ^ p2)


def inverse(t: Transform, length: int) -> Transform:
    r, refl = t
    if length == 0:
        return (0, refl)
    return (r, 1) if refl else ((-r) % length, 0)


def all_transforms(length: int):
    """Every alignment of a word of the given length, reflections last."""
    for refl in (0, 1):
        for r in range(max(length, 1)):
            yield (r, refl)
