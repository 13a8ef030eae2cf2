# Rough-fuzzy weights of the 9-vertex illustration graph.
# Each row: label, base TFV (u, v, w), offsets (a1, a2, a3, a4).

LINEAR_WEIGHTS = [
    # left column of the linear-weight table
    ("e12", (9.0, 11.5, 12.7), (0.0, 2.0, -1.0, 3.0)),
    ("e15", (11.0, 13.0, 15.0), (0.0, 1.0, -1.0, 2.0)),
    ("e16", (9.2, 10.5, 12.4), (0.0, 1.5, -0.7, 1.9)),
    ("e23", (10.6, 14.1, 17.2), (0.0, 2.0, -2.0, 3.0)),
    ("e26", (8.3, 10.0, 12.4), (0.0, 1.0, -2.0, 2.0)),
    ("e34", (9.8, 11.7, 14.0), (0.0, 2.0, -2.0, 2.5)),
    ("e36", (11.0, 14.0, 15.0), (0.0, 1.5, -0.5, 2.0)),
    ("e45", (12.0, 14.7, 17.1), (0.0, 1.0, -0.5, 1.8)),
    ("e46", (10.0, 12.0, 14.0), (0.0, 2.5, -1.5, 2.7)),
    # right column
    ("e56", (9.4, 11.6, 12.8), (0.0, 0.5, -0.7, 0.9)),
    ("e17", (11.5, 12.9, 13.8), (0.0, 0.9, -1.2, 1.8)),
    ("e18", (8.9, 10.2, 12.0), (0.0, 0.5, -0.6, 0.95)),
    ("e27", (10.0, 12.0, 13.5), (0.0, 1.0, -1.1, 1.5)),
    ("e39", (9.8, 11.2, 12.4), (0.0, 0.4, -0.5, 0.8)),
    ("e58", (11.9, 12.8, 14.5), (0.0, 1.2, -1.2, 1.4)),
    ("e79", (11.5, 12.0, 13.5), (0.0, 1.1, -0.9, 1.3)),
    ("e48", (9.0, 10.2, 12.9), (0.0, 0.6, -0.4, 0.67)),
    ("e49", (10.2, 11.6, 12.4), (0.0, 0.78, -0.8, 0.8)),
]

QUADRATIC_WEIGHTS = [
    # left column of the quadratic-weight table
    ("e12", "e15", (9.0, 11.0, 13.0), (0.0, 0.7, -0.2, 1.0)),
    ("e12", "e16", (8.5, 10.2, 11.5), (0.0, 1.2, -0.5, 1.4)),
    ("e15", "e16", (9.5, 10.7, 11.6), (0.0, 0.4, -0.2, 0.8)),
    ("e15", "e56", (9.8, 10.8, 11.5), (0.0, 1.0, -0.8, 1.2)),
    ("e26", "e36", (10.2, 12.2, 13.4), (0.0, 1.2, -0.3, 1.5)),
    ("e23", "e26", (10.4, 11.7, 12.9), (0.0, 0.9, -0.5, 1.6)),
    ("e12", "e26", (8.6, 9.2, 9.8), (0.0, 1.2, -0.2, 1.5)),
    ("e26", "e46", (8.1, 9.8, 10.9), (0.0, 0.9, -0.3, 1.2)),
    ("e23", "e34", (10.8, 12.9, 14.2), (0.0, 2.0, -0.9, 2.6)),
    ("e23", "e46", (11.0, 13.0, 14.0), (0.0, 2.1, -0.2, 2.4)),
    ("e23", "e56", (10.7, 11.7, 12.6), (0.0, 1.0, -1.2, 1.5)),
    ("e34", "e56", (8.0, 10.0, 12.0), (0.0, 1.0, -1.0, 2.0)),
    ("e16", "e34", (7.8, 11.0, 12.0), (0.0, 0.9, -1.0, 1.9)),
    ("e34", "e46", (9.0, 11.0, 13.0), (0.0, 1.0, -1.0, 2.0)),
    ("e48", "e79", (9.8, 11.2, 12.4), (0.0, 1.5, -1.2, 1.9)),
    ("e45", "e36", (12.0, 14.0, 15.0), (0.0, 2.0, -1.0, 3.0)),
    ("e45", "e46", (11.6, 12.7, 13.8), (0.0, 0.7, -0.5, 0.9)),
    ("e16", "e56", (9.5, 10.5, 11.8), (0.0, 1.4, -0.1, 1.5)),
    # right column
    ("e56", "e36", (10.0, 12.5, 14.0), (0.0, 0.9, -0.7, 1.2)),
    ("e12", "e56", (9.0, 11.0, 13.0), (0.0, 0.7, -0.5, 1.0)),
    ("e15", "e58", (10.9, 11.5, 12.1), (0.0, 0.5, -0.5, 0.9)),
    ("e46", "e48", (10.8, 12.2, 13.5), (0.0, 0.9, -0.4, 1.2)),
    ("e15", "e49", (11.2, 12.0, 13.9), (0.0, 0.7, -0.3, 0.8)),
    # printed as [z, z+1.2][z-1.1, z+1.1]; a2 is capped at a4 so the lower
    # approximation nests inside the upper one (a2 never enters an objective)
    ("e17", "e48", (10.0, 11.5, 12.5), (0.0, 1.1, -1.1, 1.1)),
    ("e17", "e18", (8.0, 10.0, 12.0), (0.0, 0.7, -0.6, 0.8)),
    ("e18", "e79", (8.9, 10.0, 11.2), (0.0, 1.5, -1.3, 1.7)),
    ("e27", "e39", (11.2, 12.3, 13.4), (0.0, 1.2, -1.2, 1.4)),
    ("e27", "e58", (10.0, 12.2, 14.0), (0.0, 1.6, -1.5, 1.7)),
    ("e39", "e58", (9.0, 11.0, 13.0), (0.0, 1.0, -1.0, 1.2)),
    ("e27", "e56", (12.1, 12.6, 12.9), (0.0, 0.2, -0.8, 1.0)),
    ("e27", "e46", (10.0, 11.0, 12.0), (0.0, 2.0, -1.0, 3.0)),
    # second e39/e58 row, base (10.5, 11.5, 12.9), offsets (0, 1, -1, 2): dropped
    ("e26", "e39", (11.0, 12.6, 13.5), (0.0, 1.2, -2.0, 2.4)),
    ("e46", "e58", (12.0, 13.6, 14.5), (0.0, 1.8, -1.3, 2.9)),
    ("e49", "e56", (8.9, 10.9, 12.5), (0.0, 1.0, -1.4, 1.9)),
    ("e45", "e56", (10.8, 11.8, 12.9), (0.0, 0.5, -0.4, 0.6)),
]
