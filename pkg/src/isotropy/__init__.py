'''Isotropy is an exact computational library for isotropic reductive groups over finite commutative rings.
Specifically, _isotropy_ builds root systems (including the non-reduced BC_n), folds Tits indices onto their relative
root systems, realizes the classical families as matrix groups over Z/m and products of such rings, and checks the
structure theorems about root subgroups of these groups by exhaustive or seeded sampled enumeration.

Everything is exact: root coordinates are integers, relative geometry is solved over the rationals, and group
elements are integer matrices reduced modulo the ring's moduli and hashed to canonical codes.

The command-line entry point is `isotropy` (see cli.py); batteries of checks live in experiments.py.
'''
