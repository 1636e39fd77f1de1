"""
Stored expectations for Tits indices: the exceptional table, the closed forms of the six classical families, the
list of isomorphic and equivalent indices, and the reductive part of the common centralizer of the non-ultrashort
root subgroups. index.verify_tables recomputes everything stored here from (base system, Gamma, J).

EXCEPTIONAL TABLE
=================

One entry per row. Rows carrying two names (the same J under different groups Gamma) share their data. Fibers
are listed by increasing root length. The superscript digit of a name gives |Gamma|: no digit or 1 is the trivial
group, 2 the diagram flip, 3 the cyclic triality 1 -> 3 -> 4 -> 1 of D4 and 6 the full triality group.
"""

from collections import namedtuple

from .errors import ConstructionError

ExceptionalRow = namedtuple("ExceptionalRow", "names base rank J relative kernel fibers out")

EXCEPTIONAL_ROWS = (
    ExceptionalRow(("E_{7,1}^{78}",), "E", 7, (7,), "A_1", "E_6", (27,), 1),
    ExceptionalRow(("3D_{4,1}^{9}", "6D_{4,1}^{9}"), "D", 4, (2,), "BC_1", "3A_1", (8, 1), 6),
    ExceptionalRow(("2E_{6,1}^{35}",), "E", 6, (2,), "BC_1", "A_5", (20, 1), 2),
    ExceptionalRow(("E_{7,1}^{66}",), "E", 7, (1,), "BC_1", "D_6", (32, 1), 1),
    ExceptionalRow(("E_{8,1}^{133}",), "E", 8, (8,), "BC_1", "E_7", (56, 1), 1),
    ExceptionalRow(("F_{4,1}^{21}",), "F", 4, (4,), "BC_1", "B_3", (8, 7), 1),
    ExceptionalRow(("2E_{6,1}^{29}",), "E", 6, (1, 6), "BC_1", "D_4", (16, 8), 2),
    ExceptionalRow(("E_{7,1}^{48}",), "E", 7, (6,), "BC_1", "A_1 + D_5", (32, 10), 1),
    ExceptionalRow(("E_{8,1}^{91}",), "E", 8, (1,), "BC_1", "D_7", (64, 14), 1),
    ExceptionalRow(("1E_{6,2}^{28}",), "E", 6, (1, 6), "A_2", "D_4", (8,), 1),
    ExceptionalRow(("G_{2,2}^{0}",), "G", 2, (1, 2), "G_2", "∅", (1, 1), 1),
    ExceptionalRow(("3D_{4,2}^{2}", "6D_{4,2}^{2}"), "D", 4, (1, 2, 3, 4), "G_2", "∅", (3, 1), 6),
    ExceptionalRow(("1E_{6,2}^{16}", "2E_{6,2}^{16''}"), "E", 6, (2, 4), "G_2", "2A_2", (9, 1), 2),
    ExceptionalRow(("E_{8,2}^{78}",), "E", 8, (7, 8), "G_2", "E_6", (27, 1), 1),
    ExceptionalRow(("2E_{6,2}^{16'}",), "E", 6, (1, 2, 6), "BC_2", "A_3", (8, 6, 1), 2),
    ExceptionalRow(("E_{7,2}^{31}",), "E", 7, (1, 6), "BC_2", "A_1 + D_4", (16, 8, 1), 1),
    ExceptionalRow(("E_{8,2}^{66}",), "E", 8, (1, 8), "BC_2", "D_6", (32, 12, 1), 1),
    ExceptionalRow(("E_{7,3}^{28}",), "E", 7, (1, 6, 7), "C_3", "D_4", (8, 1), 1),
    ExceptionalRow(("F_{4,4}^{0}",), "F", 4, (1, 2, 3, 4), "F_4", "∅", (1, 1), 1),
    ExceptionalRow(("2E_{6,4}^{2}",), "E", 6, (1, 2, 3, 4, 5, 6), "F_4", "∅", (2, 1), 2),
    ExceptionalRow(("E_{7,4}^{9}",), "E", 7, (1, 3, 4, 6), "F_4", "3A_1", (4, 1), 1),
    ExceptionalRow(("E_{8,4}^{28}",), "E", 8, (1, 6, 7, 8), "F_4", "D_4", (8, 1), 1),
    ExceptionalRow(("1E_{6,6}^{0}",), "E", 6, (1, 2, 3, 4, 5, 6), "E_6", "∅", (1,), 1),
    ExceptionalRow(("E_{7,7}^{0}",), "E", 7, (1, 2, 3, 4, 5, 6, 7), "E_7", "∅", (1,), 1),
    ExceptionalRow(("E_{8,8}^{0}",), "E", 8, (1, 2, 3, 4, 5, 6, 7, 8), "E_8", "∅", (1,), 1),
)


def name_key(name):
    """Normalizes an index name for lookup: braces and blanks are ignored."""
    return name.replace("{", "").replace("}", "").replace(" ", "")


EXCEPTIONAL_BY_NAME = {name_key(n): row for row in EXCEPTIONAL_ROWS for n in row.names}


def gamma_kind(name):
    """Order of Gamma encoded by the leading digit of an exceptional name (1 when absent)."""
    return int(name[0]) if name[0].isdigit() else 1


# Classical closed forms

def _fibers(classes, rank):
    """Drops the short class of a rank-one BC or C system (it has no short roots)."""
    if rank == 1 and len(classes) == 3:
        return (classes[0], classes[2])
    if rank == 1 and len(classes) == 2:
        return (classes[1],)
    return tuple(classes)


def expected_classical(family, n, r, d=1):
    """
    Closed forms for a classical index.
    @param family: 1A, 2A, B, C, 1D or 2D
    @return: dict with relative type, kernel type (Counter-compatible string), fibers, |Out| and branch label
    """
    kernel = {}

    def add(type_label, rank, count=1):
        if count > 0:
            kernel[(type_label, rank)] = kernel.get((type_label, rank), 0) + count

    branch = None
    if family == "1A":
        relative = "A_" + str(r)
        add("A", d - 1, r + 1)
        fibers = (d * d,)
        out = 2 if r == 1 and d >= 2 else 1
    elif family == "2A":
        add("A", d - 1, 2 * r)
        add("A", n - 2 * r * d)
        if 2 * r * d <= n:
            branch = "2rd<=n"
            relative = "BC_" + str(r)
            fibers = _fibers((2 * d * (n + 1 - 2 * r * d), 2 * d * d, d * d), r)
        else:
            branch = "2rd=n+1"
            relative = "C_" + str(r)
            fibers = _fibers((2 * d * d, d * d), r)
        out = 2
    elif family == "B":
        relative = "B_" + str(r)
        add("B", n - r)
        fibers = _fibers((2 * n + 1 - 2 * r, 1), r) if r >= 2 else (2 * n + 1 - 2 * r,)
        out = 1
    elif family == "C":
        add("A", d - 1, r)
        add("C", n - r * d)
        if r * d <= n - 1:
            relative = "BC_" + str(r)
            fibers = _fibers((2 * d * (n - r * d), d * d, d * (d + 1) // 2), r)
        else:
            relative = "C_" + str(r)
            fibers = _fibers((d * d, d * (d + 1) // 2), r)
        out = 1
    elif family in ("1D", "2D"):
        add("A", d - 1, r)
        add("D", n - r * d)
        if r * d <= n - 1 and (family == "2D" or r * d <= n - 2):
            if d >= 2:
                relative = "BC_" + str(r)
                fibers = _fibers((2 * d * (n - r * d), d * d, d * (d - 1) // 2), r)
            else:
                relative = "B_" + str(r)
                fibers = _fibers((2 * (n - r), 1), r) if r >= 2 else (2 * (n - r),)
        elif d >= 2:
            relative = "C_" + str(r)
            fibers = _fibers((d * d, d * (d - 1) // 2), r)
        else:
            relative = "D_" + str(r)
            fibers = (1,)
        if family == "1D":
            if r * d == n:
                out = 2 if (n, r, d) in ((4, 2, 2), (4, 1, 4)) else 1
            else:
                out = 6 if (n, r, d) == (4, 1, 2) else 2
        else:
            out = 6 if (n, r, d) == (4, 1, 2) else 2
    else:
        raise ConstructionError("unknown classical family " + repr(family))
    parts = []
    for (type_label, rank), count in sorted(kernel.items()):
        parts.append((str(count) if count > 1 else "") + type_label + "_" + str(rank))
    return {"relative": relative,
            "kernel": " + ".join(parts) if parts else "∅",
            "fibers": fibers,
            "out": out,
            "branch": branch}


# Isomorphisms (strict) and equivalences of indices

EQUIVALENCE_LIST = (
    ("1A(1,1,1)", "B(1,1)", "iso"),
    ("B(1,1)", "C(1,1,1)", "iso"),
    ("B(2,1)", "C(2,1,2)", "iso"),
    ("B(2,2)", "C(2,2,1)", "iso"),
    ("2A(3,1,1)", "2D(3,1,2)", "iso"),
    ("2A(3,1,2)", "2D(3,1,1)", "iso"),
    ("2D(3,1,1)", "1A(3,1,2)", "equiv"),
    ("1A(3,1,2)", "1D(3,1,1)", "iso"),
    ("2A(3,2,1)", "2D(3,2,1)", "iso"),
    ("1A(3,3,1)", "1D(3,3,1)", "iso"),
    ("1D(4,1,1)", "1D(4,1,4)", "iso"),
    ("1D(4,1,4)", "2D(4,1,1)", "equiv"),
    ("1D(4,1,2)", "2D(4,1,2)", "equiv"),
    ("2D(4,1,2)", "3D_{4,1}^{9}", "equiv"),
    ("3D_{4,1}^{9}", "6D_{4,1}^{9}", "equiv"),
    ("1D(4,2,1)", "1D(4,2,2)", "iso"),
    ("1D(4,2,2)", "2D(4,2,1)", "equiv"),
    ("3D_{4,2}^{2}", "6D_{4,2}^{2}", "equiv"),
    ("1E_{6,2}^{16}", "2E_{6,2}^{16''}", "equiv"),
)

NEGATIVE_CONTROLS = (
    ("1A(2,2,1)", "C(2,2,1)", "equiv"),
)


def equivalence_schemata(n_max=6):
    """
    Families of equivalent pairs: 1A(n,1,d) ~ 2A(n,1,d) for d >= 3, n >= 5, 2d = n+1, and
    1D(n,r,d) ~ 2D(n,r,d) for n >= 5, rd <= n-2.
    """
    pairs = []
    for n in range(5, n_max + 1):
        if (n + 1) % 2 == 0 and (n + 1) // 2 >= 3:
            d = (n + 1) // 2
            pairs.append(("1A(%d,1,%d)" % (n, d), "2A(%d,1,%d)" % (n, d), "equiv"))
        d = 1
        while d <= n:
            if (2 * n) % d == 0:
                r = 1
                while r * d <= n - 2:
                    pairs.append(("1D(%d,%d,%d)" % (n, r, d), "2D(%d,%d,%d)" % (n, r, d), "equiv"))
                    r += 1
            d *= 2
    return pairs


# Reductive part of the common centralizer of the non-ultrashort root subgroups (split adjoint groups)

CENT_US = {
    "2A": "GL_{n+1-2rd}",
    "C": "Sp_{2n-2rd}",
    "1D": "SO_{2n-2rd}",
    "2D": "SO_{2n-2rd}",
    "2E_{6,2}^{16'}": "G_m",
    "E_{7,2}^{31}": "SL_2",
    "E_{8,2}^{66}": "mu_2",
}
