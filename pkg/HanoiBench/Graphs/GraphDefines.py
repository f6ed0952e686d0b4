# coding: utf-8

from fractions import Fraction
import math

# === sierpinski
CORNERS                                     = (u'l', u'r', u't')
LETTERS                                     = (u'L', u'R', u'T')
LETTER_OF_CORNER                            = {u'l': u'L', u'r': u'R', u't': u'T'}
CORNER_OF_LETTER                            = {u'L': u'l', u'R': u'r', u'T': u't'}
# corner c of child X, when X is not the child at c, is a junction of the parent
JUNCTION_OF                                 = {
    (u'L', u'r'): u'lr', (u'R', u'l'): u'lr',
    (u'L', u't'): u'lt', (u'T', u'l'): u'lt',
    (u'R', u't'): u'rt', (u'T', u'r'): u'rt',
}
JUNCTIONS                                   = (u'lr', u'lt', u'rt')
SIDE_CHILDREN                               = {
    frozenset([u'l', u'r']): (u'L', u'R'),
    frozenset([u'l', u't']): (u'L', u'T'),
    frozenset([u'r', u't']): (u'R', u'T'),
}

# corner -> peg (0-indexed): peg 1 at the top, pegs 2 and 3 at the left and right
TOP_ORIENTATION                             = {u'l': 1, u'r': 2, u't': 0}

# === octahedron, opposite vertices are (0,1), (2,3), (4,5)
OCTAHEDRON_OPPOSITE                         = ((0, 1), (2, 3), (4, 5))
OCTAHEDRON_EDGES                            = tuple(
    (i, j) for i in range(6) for j in range(i + 1, 6)
    if (i, j) not in ((0, 1), (2, 3), (4, 5))
)
OCTAHEDRON_SEARCH_BUDGET                    = 5000   # candidate paths

# === separators
DEFAULT_C                                   = 1 / math.sqrt(2)
FAIRNESS_THRESHOLD                          = Fraction(1, 2)

# === pegsets
KAPPA                                       = 4      # pegset_path length <= KAPPA*n for p <= 7

# === rendering
PEG_DIGITS                                  = u'123456789'
