import random

import pytest
from hypothesis import given, strategies as st

from dpl import words as W
from dpl.errors import MalformedWord


def pair(a, b):
    return (a, b) if a < b else (b, a)


class TestOtimes:
    def test_table_rows(self):
        # self product names the vertex from the co-curve
        assert W.otimes((1, 2), (1, 2)) == (1, 2)
        # {+1,+2} * {+1,+3} = {+2,-3}
        assert W.otimes((1, 2), (1, 3)) == pair(2, -3)
        # {-1,+2} * {+1,+3} = {+2,+3}
        assert W.otimes((-1, 2), (1, 3)) == pair(2, 3)
        # remaining sign rows
        assert W.otimes((1, 2), (-1, 3)) == pair(-2, -3)
        assert W.otimes((-1, 2), (-1, 3)) == pair(-2, 3)

    def test_mismatched_carrier(self):
        with pytest.raises(MalformedWord):
            W.otimes((1, 2), (3, 4))
        with pytest.raises(MalformedWord):
            W.otimes((1, 2), (1, -2))  # co-indices coincide


# published node sets of the three-curve arrangement with four triple
# points, decoded to crossing pairs
UPS_A = frozenset({(-2, -1), (1, 3), (-2, 3)})
UPS_B = frozenset({(-1, 2), (-3, -1), (2, 3)})
UPS_C = frozenset({(-2, 1), (-1, 3), (-3, 2)})
UPS_D = frozenset({(1, 2), (-3, 1), (-3, -2)})


class TestRoll:
    def test_singleton(self):
        assert W.roll([(1, 2)], 1, carrier=1) == ((1, 2),)

    def test_position_out_of_range(self):
        with pytest.raises(MalformedWord):
            W.roll([(1, 2)], 2, carrier=1)

    def test_triple_point_transport(self):
        # carrier-1 prime factor of node A, rolled at its second entry,
        # is A's prime factor in the carrier-3 cycle
        block1 = ((-2, -1), (1, 3))
        rolled = W.roll(block1, 2, carrier=1)
        assert set(rolled) <= UPS_A
        # and rolled at the first entry, the carrier-2 factor reversed
        rolled2 = W.roll(block1, 1, carrier=1)
        assert set(rolled2) <= UPS_A

    def test_roll_closure_on_catalog(self):
        from dpl import catalog
        for name in ("Upsilon", "M1", "C64"):
            arr = catalog.arrangement(name)
            blocksets = {i: set(arr.blocks(i)) for i in arr.indices}
            for i in arr.indices:
                for block in arr.blocks(i):
                    for p in range(1, len(block) + 1):
                        rolled = W.roll(block, p, carrier=i)
                        t = W.co_index(block[p - 1], i)
                        if t > 0:
                            assert rolled in blocksets[t]
                        else:
                            assert tuple(reversed(rolled)) in blocksets[-t]


class TestCircularWords:
    def test_min_rotation(self):
        assert W.min_rotation((2, -1, 3)) == (-1, 3, 2)
        assert W.min_rotation(()) == ()

    @given(st.lists(st.integers(-5, 5), min_size=1, max_size=12))
    def test_min_rotation_is_a_rotation(self, letters):
        w = tuple(letters)
        assert W.min_rotation(w) in W.rotations(w)

    @given(st.lists(st.integers(-5, 5), min_size=1, max_size=10),
           st.integers(0, 9))
    def test_rotation_invariance(self, letters, r):
        w = tuple(letters)
        assert W.cyclic_eq(w, w[r % len(w):] + w[:r % len(w)])


class TestSignedPermutation:
    def test_group_laws(self):
        random.seed(0)
        perms = W.SignedPermutation.all((1, 2, 3))
        assert len(perms) == 48
        for _ in range(50):
            s, t = random.choice(perms), random.choice(perms)
            u = s * t
            for x in (-3, -2, -1, 1, 2, 3):
                assert u(x) == s(t(x))
                assert s.inverse()(s(x)) == x
                assert s(-x) == -s(x)

    def test_identity(self):
        e = W.SignedPermutation.identity((1, 2))
        assert e(1) == 1 and e(-2) == -2

    def test_rejects_non_bijections(self):
        with pytest.raises(MalformedWord):
            W.SignedPermutation({1: 2, 2: 2})


class TestActionOnArrangements:
    def test_group_action_law(self):
        from dpl import all_c64
        from dpl.mutation import act_words
        random.seed(1)
        arr = all_c64(3)
        idx = arr.indices
        words = tuple(arr.disk[i] for i in idx)
        perms = W.SignedPermutation.all(idx)
        for _ in range(40):
            s, t = random.choice(perms), random.choice(perms)
            one = act_words(s * t, idx, words)
            two = act_words(t, idx, act_words(s, idx, words))
            assert one == two

    def test_c64_stabilizer_matches_published_cosets(self):
        # one-line images of the order-24 stabilizer as printed with the
        # hemicuboctahedral example
        published = {
            (1, 2, 3), (2, 3, 1), (3, 1, 2),
            (-1, -2, 3), (-2, -3, 1), (-3, -1, 2),
            (-1, 2, -3), (-2, 3, -1), (-3, 1, -2),
            (1, -2, -3), (2, -3, -1), (3, -1, -2),
            (2, 1, -3), (3, 2, -1), (1, 3, -2),
            (3, -2, 1), (1, -3, 2), (2, -1, 3),
            (-1, 3, 2), (-2, 1, 3), (-3, 2, 1),
            (-2, -1, -3), (-3, -2, -1), (-1, -3, -2),
        }
        from dpl import all_c64, stabilizer
        stab = {s.one_line() for s in stabilizer(all_c64(3))}
        assert stab == published

    def test_c04_swap_stays_in_the_class(self):
        from dpl import cyclic_thin, orbit_count
        arr = cyclic_thin(3)
        swap = W.SignedPermutation({1: 2, 2: 1, 3: 3})
        moved = arr.act(swap)
        assert (moved.complex.canonical_key("plain")
                == arr.complex.canonical_key("plain"))
        # the stabilizer has index 2: exactly two indexed-oriented versions
        assert orbit_count(arr) == 2

    def test_orbit_sizes_divide_group_order(self):
        from dpl import catalog, orbit_count
        for name in ("C04", "C15", "C43", "C36"):
            arr = catalog.arrangement(name)
            assert 48 % (48 // orbit_count(arr)) == 0


class TestRollBijection:
    def test_bijection_onto_target_blocks(self):
        # for every ordered pair of curves, rolling the blocks that meet
        # the target hits each target block exactly once
        from dpl import catalog
        for name in ("C04", "C22", "Upsilon", "M1", "M2star"):
            arr = catalog.arrangement(name)
            for i in arr.indices:
                for t in arr.indices:
                    if t == i:
                        continue
                    images = []
                    for block in arr.blocks(i):
                        for p, pr in enumerate(block, start=1):
                            target = W.co_index(pr, i)
                            if abs(target) != t:
                                continue
                            rolled = W.roll(block, p, carrier=i)
                            if target < 0:
                                rolled = tuple(reversed(rolled))
                            images.append(rolled)
                    shared = [b for b in arr.blocks(t)
                              if any(abs(W.co_index(pr, t)) == i for pr in b)]
                    assert sorted(images) == sorted(shared), (name, i, t)
