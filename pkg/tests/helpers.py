"""Hand-built reference diagrams shared across test modules.

Each PD tuple (a, b, c, d) is counterclockwise from the incoming
under-arc, so the under-strand runs a -> c and the over-strand occupies
b and d.  These were written out on paper from the standard pictures.
"""

from cnjones.diagram import OrientedDiagram

UNKNOT = OrientedDiagram((), (), 1, "unknot")

# Right-handed trefoil, writhe +3.
TREFOIL = OrientedDiagram(
    crossings=((1, 4, 2, 5), (5, 2, 6, 3), (3, 6, 4, 1)),
    components=((1, 2, 3, 4, 5, 6),),
    name="trefoil",
)

# Positive Hopf link, both crossings +1, lk = +1.
HOPF_POS = OrientedDiagram(
    crossings=((1, 3, 2, 4), (4, 2, 3, 1)),
    components=((1, 2), (3, 4)),
    name="hopf+",
)

# One-crossing unknots: positive and negative kink.
KINK_POS = OrientedDiagram(((1, 2, 2, 1),), ((1, 2),), name="kink+")
KINK_NEG = OrientedDiagram(((2, 2, 1, 1),), ((1, 2),), name="kink-")

# (2,4) torus link as a closed positive 2-braid, lk = +2 (proper).
TORUS_24 = OrientedDiagram(
    crossings=((1, 2, 4, 3), (3, 4, 6, 5), (5, 6, 8, 7), (7, 8, 2, 1)),
    components=((1, 4, 5, 8), (2, 3, 6, 7)),
    name="t(2,4)",
)

# Figure-eight knot: alternating, writhe 0, amphichiral.
FIGURE_EIGHT = OrientedDiagram(
    crossings=((4, 2, 5, 1), (8, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8)),
    components=((1, 2, 3, 4, 5, 6, 7, 8),),
    name="figure-eight",
)
