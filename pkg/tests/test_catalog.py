import pytest

from breedsim.catalog import (
    CatalogError,
    builtin_catalog,
    compare_report,
    find_entry,
    load_catalog,
)

GOOD = """
# a comment
code six_four_two p=2 n=6 k=4 d=2 pure=1
111111|000000
000000|111111

code five_qubit p=2 n=5 k=1 d=3 pure=1
10010|01100
01001|00110
10100|00011
01010|10001
"""


def test_load_and_validate():
    entries = load_catalog(GOOD)
    assert [e.name for e in entries] == ["six_four_two", "five_qubit"]
    assert entries[0].code.distance == 2 and entries[0].pure
    assert entries[1].code.distance == 3


def test_builtin_catalog_ships_required_codes():
    names = {e.name for e in builtin_catalog()}
    assert {"six_four_two", "five_qubit", "four_two_two"} <= names


def test_find_entry_unknown_name():
    with pytest.raises(CatalogError, match="no catalog entry"):
        find_entry(builtin_catalog(), "nonesuch")


def test_wrong_distance_claim_is_a_load_error():
    bad = GOOD.replace("d=2", "d=3")
    with pytest.raises(CatalogError, match="claims d=3"):
        load_catalog(bad)


def test_wrong_k_claim_is_a_load_error():
    bad = GOOD.replace("k=4", "k=3")
    with pytest.raises(CatalogError, match="claims k=3"):
        load_catalog(bad)


def test_parse_error_names_line():
    with pytest.raises(CatalogError, match=":1:"):
        load_catalog("not a header")


def test_missing_generators():
    with pytest.raises(CatalogError, match="ships 1 generator"):
        load_catalog("code x p=2 n=6 k=4 d=2 pure=1\n111111|000000\n")


def test_non_self_orthogonal_generators():
    text = "code x p=2 n=1 k=-1 d=1 pure=1"
    # malformed k is caught by the header regex instead
    with pytest.raises(CatalogError):
        load_catalog(text)
    text = "code x p=2 n=2 k=0 d=1 pure=1\n10|00\n00|10\n"
    with pytest.raises(CatalogError, match="self-orthogonal"):
        load_catalog(text)


class TestCompareReport:
    def test_empty_catalog(self):
        assert compare_report([]) == []

    def test_worked_example_dominance(self):
        rows = compare_report(builtin_catalog())
        breeding = [
            r
            for r in rows
            if r.kind == "breeding" and r.name == "six_four_two" and r.preshared == 1
        ]
        assert len(breeding) == 1
        row = breeding[0]
        assert (row.noisy_pairs, row.gross, row.net) == (5, 4, 3)
        assert row.dominant

    def test_hashing_rows_never_flagged(self):
        for r in compare_report(builtin_catalog()):
            if r.kind == "hashing":
                assert not r.dominant

    def test_dominance_recomputed_independently(self):
        rows = compare_report(builtin_catalog())
        hashing = [r for r in rows if r.kind == "hashing"]
        for r in rows:
            if r.kind != "breeding":
                continue
            dominated = any(
                h.noisy_pairs == r.noisy_pairs and h.d >= r.d and h.net >= r.net
                for h in hashing
            )
            assert r.dominant == (not dominated)

    def test_filters(self):
        rows = compare_report(builtin_catalog(), noisy_pairs=5)
        assert {r.noisy_pairs for r in rows} == {5}
        rows = compare_report(builtin_catalog(), correction=(0, 1))
        assert all(r.d >= 2 for r in rows)
