from isotropy import roots, tables


def test_expected_quasi_split_a4():
    expected = tables.expected_classical("2A", 4, 2, 1)
    assert expected["relative"] == "BC_2"
    assert expected["fibers"] == (2, 2, 1)
    assert roots.same_type(expected["kernel"], "∅")
    assert expected["branch"] == "2rd<=n"


def test_expected_rank_one_drops_short_class():
    expected = tables.expected_classical("C", 3, 1, 2)
    assert expected["relative"] == "BC_1"
    assert expected["fibers"] == (4, 3)


def test_exceptional_lookup_ignores_braces():
    row = tables.EXCEPTIONAL_BY_NAME[tables.name_key("E_{8,2}^{66}")]
    assert row.relative == "BC_2" and row.fibers == (32, 12, 1)
    assert tables.EXCEPTIONAL_BY_NAME[tables.name_key("6D_{4,1}^{9}")] is \
        tables.EXCEPTIONAL_BY_NAME[tables.name_key("3D_{4,1}^{9}")]


def test_gamma_kind():
    assert tables.gamma_kind("3D_{4,2}^{2}") == 3
    assert tables.gamma_kind("E_{7,1}^{78}") == 1


def test_schemata():
    pairs = tables.equivalence_schemata(6)
    assert len(pairs) == 12
    assert ("1A(5,1,3)", "2A(5,1,3)", "equiv") in pairs
    assert ("1D(6,1,4)", "2D(6,1,4)", "equiv") in pairs
