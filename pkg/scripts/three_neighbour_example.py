"""Walk through a thirteen-cell shape whose collapse data all end at a three-neighbour cell.

Prints each datum with its end-cells and clause status, then the datum picked
by the recursive search and its decomposition checks.
"""

from thinpoly import collapse
from thinpoly.cd import theorem_trace
from thinpoly.grid import Cell, neighbours, normalize, to_ascii

CELLS = [(0, 0), (0, 1), (0, 2), (1, 1), (2, 1), (2, 0), (-1, 2), (-2, 0), (-2, 1), (-2, 2), (-3, 1), (-4, 0), (-4, 1)]


def main():
    P = normalize(Cell(x, y) for x, y in CELLS)
    print(to_ascii(P), end="\n\n")
    for d in collapse.collapse_data(P):
        first, second = collapse.first_second_end_cells(P, d)
        print(
            f"I={[tuple(c) for c in d.I.cells]} PI={sorted(map(tuple, d.PI))} "
            f"first={tuple(first)} second={tuple(second)} "
            f"neighbours(second)={len(neighbours(P, second))} refined={collapse.lemma_clauses_hold(P, d)}"
        )
    d, depth = collapse.inductive_search(P)
    print(f"\nrecursive search: I={[tuple(c) for c in d.I.cells]} depth={depth}")
    rep = collapse.verify_decomposition(P, d)
    print(f"case {rep.case.tag}, k={rep.case.k}, identities {'ok' if rep.passed else rep.failures()}")
    print(f"trace value {theorem_trace(P).value}")


if __name__ == "__main__":
    main()
