"""Signed alphabet, circular words, crossing pairs and their node algebra.

Conventions used throughout the package:

* A *signed index* is a nonzero int; ``-i`` is the reoriented version of
  curve ``i``.
* A *crossing pair* names one of the four intersection points of two
  curves.  It is stored as a sorted 2-tuple of signed indices, e.g.
  ``(-1, 2)``.  Each of the four sign combinations on a base pair names a
  distinct intersection point.
* The *slot* of a crossing along a carrier curve is its rank (1..4) among
  the four crossings with the same co-curve, in walk order.  Slot and sign
  pair determine each other::

      slot 1 <-> (carrier -, co -)      slot 2 <-> (carrier -, co +)
      slot 3 <-> (carrier +, co -)      slot 4 <-> (carrier +, co +)

  The table is calibrated once against the published node sets of the
  standard non-simple three-curve example and frozen here; see
  ``docs`` in the README for the calibration trace.
* A *circular word* is a tuple compared up to rotation;
  :func:`min_rotation` gives the canonical representative.
"""

from itertools import permutations, product

from .errors import MalformedWord

# slot (1-based) -> (carrier sign, co sign)
SLOT_SIGNS = {1: (-1, -1), 2: (-1, 1), 3: (1, -1), 4: (1, 1)}
SIGNS_SLOT = {v: k for k, v in SLOT_SIGNS.items()}


def pair_of(carrier, co, slot):
    """Crossing pair for the ``slot``-th crossing of ``co`` along ``carrier``.

    Both arguments are positive bases.

    >>> pair_of(1, 2, 1)
    (-2, -1)
    >>> pair_of(1, 3, 4)
    (1, 3)
    """
    cs, os_ = SLOT_SIGNS[slot]
    a, b = cs * carrier, os_ * co
    return (a, b) if a < b else (b, a)


def slot_of(pair, carrier):
    """Slot of a crossing pair along the given positive carrier base."""
    a, b = pair
    if abs(a) == carrier:
        mine, other = a, b
    elif abs(b) == carrier:
        mine, other = b, a
    else:
        raise MalformedWord("pair %r does not involve carrier %d" % (pair, carrier))
    return SIGNS_SLOT[(1 if mine > 0 else -1, 1 if other > 0 else -1)]


def co_index(pair, carrier):
    """The signed co-index of ``pair`` as seen from ``carrier`` (positive base)."""
    a, b = pair
    return b if abs(a) == carrier else a


def carrier_part(pair, carrier):
    """The signed carrier entry of ``pair`` for the given positive base."""
    a, b = pair
    return a if abs(a) == carrier else b


def otimes(x, y):
    """Rename the vertex shared by two same-carrier crossing pairs.

    ``x`` and ``y`` are crossing pairs sharing a carrier base ``i`` and
    lying in one prime factor, listed in factor order.  The result is the
    pair naming the same vertex on the two co-curves.  For ``x == y`` the
    pair itself is returned (same vertex seen from the co-curve).

    >>> otimes((1, 2), (1, 2))
    (1, 2)
    >>> otimes((1, 2), (1, 3))       # {+1,+2} * {+1,+3} -> {+2,-3}
    (-3, 2)
    >>> otimes((-1, 2), (1, 3))      # {-1,+2} * {+1,+3} -> {+2,+3}
    (2, 3)
    """
    if x == y:
        return x
    common = {abs(a) for a in x} & {abs(b) for b in y}
    if len(common) != 1:
        raise MalformedWord("pairs %r, %r share no unique carrier" % (x, y))
    i = common.pop()
    a = carrier_part(x, i)
    b = carrier_part(y, i)
    j = co_index(x, i)
    js = co_index(y, i)
    if abs(j) == abs(js):
        raise MalformedWord("co-indices of %r, %r coincide" % (x, y))
    u = j if b > 0 else -j
    v = -js if a > 0 else js
    return (u, v) if u < v else (v, u)


def roll(block, position, carrier=None):
    """Transport a prime factor to the cycle of one of its co-curves.

    ``block`` is a sequence of crossing pairs sharing carrier base ``i``
    with pairwise distinct co-bases; ``position`` is 1-based.  Returns the
    corresponding prime factor of the side cycle indexed by the signed
    co-index at ``position`` (a negative target means the reversed cycle).
    The carrier base is inferred when the block has length at least two.

    >>> roll([(1, 2)], 1, carrier=1)
    ((1, 2),)
    """
    k = len(block)
    if not 1 <= position <= k:
        raise MalformedWord("roll position %d out of range 1..%d" % (position, k))
    p = position - 1
    i = _block_carrier(block) if carrier is None else carrier
    bases = {abs(co_index(b, i)) for b in block}
    if len(bases) != k:
        raise MalformedWord("block %r is not a prime factor" % (block,))
    bp = block[p]
    alpha = [None] * k
    alpha[p] = bp
    for q in range(k):
        if q == p:
            continue
        alpha[q] = otimes(bp, block[q]) if q > p else otimes(block[q], bp)
    order = list(range(p + 1, k)) + [p] + list(range(p))
    seq = [alpha[q] for q in order]
    if carrier_part(bp, i) > 0:
        seq.reverse()
    return tuple(seq)


def _block_carrier(block):
    common = {abs(a) for a in block[0]}
    for b in block[1:]:
        common &= {abs(x) for x in b}
    if len(common) != 1:
        raise MalformedWord("block %r has no unique carrier" % (block,))
    return common.pop()


# ---------------------------------------------------------------------------
# circular words


def min_rotation(word):
    """Lexicographically least rotation of a tuple.

    >>> min_rotation((2, -1, 3))
    (-1, 3, 2)
    """
    w = tuple(word)
    if not w:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


def rotations(word):
    w = tuple(word)
    return [w[i:] + w[:i] for i in range(len(w))]


def cyclic_eq(a, b):
    a, b = tuple(a), tuple(b)
    return len(a) == len(b) and min_rotation(a) == min_rotation(b)


# ---------------------------------------------------------------------------
# signed permutations


class SignedPermutation:
    """Bijection of the signed indices commuting with negation."""

    __slots__ = ("images",)

    def __init__(self, images):
        """``images`` maps each positive base to a signed image."""
        self.images = dict(images)
        bases = sorted(self.images)
        tgt = sorted(abs(v) for v in self.images.values())
        if bases != tgt:
            raise MalformedWord("not a signed permutation: %r" % (self.images,))

    @classmethod
    def identity(cls, bases):
        return cls({i: i for i in bases})

    @classmethod
    def from_one_line(cls, bases, images):
        return cls(dict(zip(bases, images)))

    @classmethod
    def all(cls, bases):
        """All n! * 2^n signed permutations of the given positive bases."""
        bases = tuple(bases)
        out = []
        for perm in permutations(bases):
            for signs in product((1, -1), repeat=len(bases)):
                out.append(cls({b: s * p for b, p, s in zip(bases, perm, signs)}))
        return out

    def __call__(self, s):
        v = self.images[abs(s)]
        return v if s > 0 else -v

    def inverse(self):
        inv = {}
        for k, v in self.images.items():
            inv[abs(v)] = k if v > 0 else -k
        return SignedPermutation(inv)

    def compose(self, other):
        """self after other: (self * other)(x) = self(other(x))."""
        return SignedPermutation({k: self(other(k)) for k in other.images})

    def __mul__(self, other):
        return self.compose(other)

    def __eq__(self, other):
        return isinstance(other, SignedPermutation) and self.images == other.images

    def __hash__(self):
        return hash(tuple(sorted(self.images.items())))

    def __repr__(self):
        body = " ".join(str(self.images[k]) for k in sorted(self.images))
        return "SignedPermutation(%s)" % body

    def one_line(self):
        return tuple(self.images[k] for k in sorted(self.images))


def act_word(sigma, word):
    """Relabel the letters of a word by a signed permutation."""
    return tuple(sigma(x) for x in word)


def act_pair(sigma, pair):
    a, b = sigma(pair[0]), sigma(pair[1])
    return (a, b) if a < b else (b, a)
