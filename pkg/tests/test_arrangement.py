import random

import pytest

from dpl import (
    all_c64,
    catalog,
    cyclic_thin,
    from_disk_only,
    parse_text,
    validate,
)
from dpl.errors import (
    BadSignPattern,
    SubsetTooSmall,
    UnknownIndex,
    WrongMultiplicity,
)
from dpl.words import SignedPermutation


class TestValidate:
    def test_c04_from_plain_letters(self):
        arr = from_disk_only({1: (2, 2, 3, 3, -2, -2, -3, -3),
                              2: (3, 3, 1, 1, -3, -3, -1, -1),
                              3: (1, 1, 2, 2, -1, -1, -2, -2)})
        assert arr.genus == 1
        assert arr.key() == catalog.arrangement("C04").key()

    def test_two_curve(self):
        arr = from_disk_only({1: (-2, -2, 2, 2), 2: (-1, -1, 1, 1)})
        assert arr.genus == 1
        assert arr.vertex_count == 4 and arr.edge_count == 8

    def test_wrong_multiplicity(self):
        with pytest.raises(WrongMultiplicity):
            from_disk_only({1: (2, 2, 2, -3, -3, 3, 3),
                            2: (-1, -1, 1, 1),
                            3: (-1, -1, 1, 1)})

    def test_bad_sign_pattern(self):
        with pytest.raises(BadSignPattern):
            from_disk_only({1: (2, -2, 2, -2), 2: (-1, -1, 1, 1)})

    def test_single_curve_rejected(self):
        with pytest.raises(SubsetTooSmall):
            validate({1: ()}, {1: ()})

    def test_published_pair_with_shared_disk_cycles(self):
        disk = {1: (3, 2, -2, 3, -3, -2, 2, -3),
                2: (-3, 1, -1, -3, 3, -1, 1, 3),
                3: (-2, -1, 1, -2, 2, 1, -1, 2)}
        left = validate(disk, {1: (-2, -3, -3, 2, 2, 3, 3, -2),
                               2: (-1, 3, 3, 1, 1, -3, -3, -1),
                               3: (1, 2, 2, -1, -1, -2, -2, 1)})
        right = validate(disk, {1: (-3, -2, -3, 2, 2, 3, 3, -2),
                                2: (3, -1, 3, 1, 1, -3, -3, -1),
                                3: (2, 1, 2, -1, -1, -2, -2, 1)})
        assert left.genus == right.genus == 1
        assert left.vertex_count == 4 and right.vertex_count == 6
        assert left.key() != right.key()


class TestEulerIdentity:
    def test_all_catalog(self):
        for fx in catalog.all():
            arr = fx.arrangement
            V, E = arr.vertex_count, arr.edge_count
            F = sum(arr.f_vector.values())
            assert V - E + F == 2 - arr.genus
            assert arr.genus >= 1
            assert sum(s * c for s, c in arr.f_vector.items()) == 2 * E


class TestSerialization:
    def test_round_trip(self):
        for fx in catalog.all():
            arr = fx.arrangement
            again = parse_text(arr.to_text(name=fx.name))
            assert again.key() == arr.key()

    def test_disk_only_files(self):
        text = "indices: 1 2\nD 1: -2 -2 2 2\nD 2: -1 -1 1 1\n"
        arr = parse_text(text)
        assert arr.genus == 1

    def test_json_fields(self):
        data = catalog.arrangement("C04").to_json(name="C04")
        assert data["name"] == "C04"
        for field in ("indices", "disk_cycles", "crosscap_cycles",
                      "genus", "f_vector", "simple", "thin"):
            assert field in data


class TestRestriction:
    def test_identity_on_full_set(self):
        arr = catalog.arrangement("M1")
        assert arr.restriction(arr.indices).key() == arr.key()

    def test_published_subarrangements(self):
        from dpl.chirotope import class_version
        M1 = catalog.arrangement("M1")
        assert M1.restriction((2, 3, 4)).key() == class_version("C04", (2, 3, 4)).key()
        M2 = catalog.arrangement("M2")
        assert M2.restriction((1, 2, 4)).key() == class_version("C32", (1, 4, 2)).key()

    def test_too_small(self):
        with pytest.raises(SubsetTooSmall):
            catalog.arrangement("C04").restriction((1,))
        with pytest.raises(UnknownIndex):
            catalog.arrangement("C04").restriction((1, 2, 7))

    def test_commutes_with_act(self):
        # relabel-then-restrict equals restrict-then-relabel whenever the
        # permutation maps the subset onto itself
        random.seed(3)
        arr = catalog.arrangement("M1")
        J = frozenset((1, 2, 4))
        perms = [s for s in SignedPermutation.all(arr.indices)
                 if {abs(s(k)) for k in J} == set(J)]
        checked = 0
        for sigma in random.sample(perms, 12):
            sigmaJ = SignedPermutation({k: sigma(k) for k in J})
            one = arr.act(sigma).restriction(J)
            two = arr.restriction(J).act(sigmaJ)
            assert one.key() == two.key()
            checked += 1
        assert checked == 12


class TestGenerators:
    def test_cyclic_thin_small(self):
        assert cyclic_thin(2).key() == catalog.arrangement("TwoCurve").key()
        assert cyclic_thin(3).key() == catalog.arrangement("C04").key()

    def test_cyclic_thin_five(self):
        arr = cyclic_thin(5)
        assert arr.genus == 1 and arr.is_simple() and arr.is_thin()
        c04 = catalog.arrangement("C04").complex.canonical_key("plain")
        from itertools import combinations
        for J in combinations(arr.indices, 3):
            sub = arr.restriction(J)
            assert sub.complex.canonical_key("plain") == c04

    def test_all_c64_small(self):
        assert all_c64(3).key() == catalog.arrangement("C64").key()
        u4 = all_c64(4)
        assert u4.genus == 7
        assert u4.f_vector == {2: 12, 8: 3, 12: 4}

    def test_derived_crosscap_cycles_match_stored(self):
        for fx in catalog.all():
            arr = fx.arrangement
            if not arr.is_simple():
                continue
            derived = from_disk_only(dict(arr.disk))
            assert derived.key() == arr.key()


class TestPredicates:
    def test_thin(self):
        assert cyclic_thin(3).is_thin()
        assert cyclic_thin(4).is_thin()
        assert not catalog.arrangement("C64").is_thin()

    def test_martagon_catalog(self):
        for fx in catalog.all():
            expected = set(fx.expected.get("martagon_curves", []))
            arr = fx.arrangement
            got = {i for i in arr.indices if arr.is_martagon(i)}
            if expected:
                assert got == expected, fx.name

    def test_martagon_on_the_flagged_classes(self):
        assert catalog.arrangement("C22").is_martagon(1)
        assert catalog.arrangement("C32").is_martagon(1)
        assert catalog.arrangement("M1").is_martagon(1)

    def test_unknown_curve(self):
        with pytest.raises(UnknownIndex):
            catalog.arrangement("C04").is_martagon(9)


class TestUpsilonNodeCycles:
    A = frozenset({(-2, -1), (1, 3), (-2, 3)})
    B = frozenset({(-1, 2), (-3, -1), (2, 3)})
    C = frozenset({(-2, 1), (-1, 3), (-3, 2)})
    D = frozenset({(1, 2), (-3, 1), (-3, -2)})

    def test_published_node_sets_and_cycles(self):
        arr = catalog.arrangement("Upsilon")
        assert set(arr.nodes) == {self.A, self.B, self.C, self.D}
        label = {self.A: "A", self.B: "B", self.C: "C", self.D: "D"}

        def cyc(i):
            word = "".join(label[n] for n in arr.node_cycles[i])
            return min(word[r:] + word[:r] for r in range(4))

        assert cyc(1) == min("ABCD"[r:] + "ABCD"[:r] for r in range(4))
        assert cyc(2) == min("ACBD"[r:] + "ACBD"[:r] for r in range(4))
        assert cyc(3) == min("ABDC"[r:] + "ABDC"[:r] for r in range(4))
