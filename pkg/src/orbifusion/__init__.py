"""Exact toolkit for fusion rings of Z3-orbifold code VOAs.

Submodules:
    codes     -- GF(4)/GF(3) linear codes, duals, weight enumerators, cosets
    lattices  -- exact lattice bases, dual checks, norm enumeration
    registry  -- irreducible module labels, quantum and global dimensions
    fusion    -- the fusion product and its verification suites
    verlinde  -- cyclotomic S-matrix data and the Verlinde cross-check
    quadspace -- the F3 quadratic space on the 3^8 hexacode-orbifold labels
    cli       -- command-line interface
"""

from . import codes, errors

__all__ = ["codes", "errors"]
__version__ = "0.1.0"
