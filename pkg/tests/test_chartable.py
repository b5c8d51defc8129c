import numpy as np
import pytest

from pilift import structure as stc
from pilift.chartable import (TableError, character_table, check_table_file, format_table,
                              format_table_file, parse_table, structure_constants, verify_orthogonality)
from pilift.character import Character
from pilift.config import GUARDS, GuardError
from pilift.cyclotomic import Cyclotomic
from pilift.gallery import cyclic, symmetric

ALL = ["C6", "S3", "S4", "A4", "D8", "Q8", "SL(2,3)", "C7:C3", "C5:C4", "A4xC3", "U1"]


def test_s3_table(S3):
    rows = [list(map(int, chi.values)) for chi in character_table(S3)]
    classes = [r.cycle_type() for r in S3.classes.reps]
    # columns in class order; compare through the cycle types
    by_type = [{ct: v for ct, v in zip(classes, row)} for row in rows]
    assert {(d[()], d[(2,)], d[(3,)]) for d in by_type} == {(1, 1, 1), (1, -1, 1), (2, 0, -1)}


def test_c3_table():
    G = cyclic(3)
    z = Cyclotomic.zeta(3)
    got = {tuple(chi(G.gens[0] ** k) for k in range(3)) for chi in character_table(G)}
    assert got == {(1, 1, 1), (1, z, z ** 2), (1, z ** 2, z)}


@pytest.mark.parametrize("name,degrees", [
    ("A4", [1, 1, 1, 3]),
    ("S4", [1, 1, 2, 3, 3]),
    ("Q8", [1, 1, 1, 1, 2]),
    ("SL(2,3)", [1, 1, 1, 2, 2, 2, 3]),
    ("C7:C3", [1, 1, 1, 3, 3]),
    ("C5:C4", [1, 1, 1, 1, 4]),
])
def test_degrees(corpus, name, degrees):
    assert character_table(corpus[name]).degrees() == degrees


@pytest.mark.parametrize("name", ALL)
def test_column_norms_are_centralizer_orders(corpus, name):
    # second orthogonality against a brute-force centralizer
    G = corpus[name]
    tab = character_table(G)
    for c, rep in enumerate(G.classes.reps):
        s = sum((chi.values[c] * chi.values[c].conjugate() for chi in tab), Cyclotomic.rational(0))
        assert s == stc.centralizer(G, rep).order


@pytest.mark.parametrize("name", ALL)
def test_rows_are_irreducible_class_functions(corpus, name):
    G = corpus[name]
    tab = character_table(G)
    assert len(tab) == len(G.classes)
    assert tab[0].is_trivial()
    for chi in tab:
        assert chi.norm() == 1
        assert G.order % chi.degree == 0
    values = {chi.values for chi in tab}
    assert len(values) == len(tab)


@pytest.mark.parametrize("name", ["S3", "S4", "A4", "D8", "Q8", "SL(2,3)", "C7:C3", "C5:C4"])
def test_structure_constants_count_products(corpus, name):
    # K[a, b, c] = #{(x, y) in C_a x C_b : x y = z} for a fixed z in C_c
    G = corpus[name]
    K = structure_constants(G)
    elems = G.element_list()
    k = len(G.classes)
    for c in range(k):
        z = G.classes.reps[c]
        counts = np.zeros((k, k), dtype=np.int64)
        for x in elems:
            counts[G.class_of(x), G.class_of(x.inverse() * z)] += 1
        assert (K[:, :, c] == counts).all()


@pytest.mark.parametrize("name", ALL)
def test_format_round_trip(corpus, name):
    G = corpus[name]
    text = format_table(character_table(G), name)
    tf = parse_table(text)
    assert format_table_file(tf) == text
    assert check_table_file(tf) == []
    assert [[str(v) for v in row] for row in tf.rows] == [[str(v) for v in chi.values] for chi in character_table(G)]


def test_check_table_file_catches_corruption(S3):
    tf = parse_table(format_table(character_table(S3), "S3"))
    tf.rows[2][1] = Cyclotomic.rational(1)
    problems = check_table_file(tf)
    assert problems and any("orthogonal" in p for p in problems)


def test_parse_rejects_bad_header():
    with pytest.raises(ValueError):
        parse_table("grp S3 order 6 classes 3\n")


def test_verify_orthogonality_rejects_wrong_rows(S3):
    rows = list(character_table(S3))
    with pytest.raises(TableError):
        verify_orthogonality(S3, rows[:-1] + [rows[0]])


def test_guard_refuses_large_groups():
    saved = GUARDS.order
    GUARDS.order = 100
    try:
        with pytest.raises(GuardError):
            character_table(symmetric(5))
    finally:
        GUARDS.order = saved


def test_constituents_of_regular_character(corpus):
    G = corpus["SL(2,3)"]
    reg = Character(G, [G.order] + [0] * (len(G.classes) - 1))
    assert [(m, chi.degree) for m, chi in character_table(G).constituents(reg)] == \
        [(chi.degree, chi.degree) for chi in character_table(G)]
