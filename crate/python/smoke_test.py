"""Smoke test for the lconvex Python module.

Build and install first, e.g.

    maturin build --release -m crates/python/Cargo.toml
    pip install target/wheels/lconvex-*.whl
"""

import json

import lconvex


def main():
    g = lconvex.Lattice.builtin("godel3")
    assert len(g) == 3 and g.labels == ["0", "1/2", "1"]
    assert g.residuum(2, 1) == 1 and g.tensor(1, 2) == 1
    passed, text = g.verify_laws()
    assert passed, text

    # Sierpinski space: sober, xi is a homeomorphism
    b = lconvex.Lattice.builtin("boolean")
    s = lconvex.Space.build(b, 2, [[1, 0]])
    assert s.members == [[0, 0], [1, 0], [1, 1]]
    assert s.is_sober() and s.is_s0()
    assert s.hull([0, 1]) == [1, 1]
    assert s.sobrify().xi_is_homeomorphism()
    assert s.specialization().matrix() == [[1, 1], [0, 1]]

    # two points with the same hull: X^F collapses them
    indiscrete = lconvex.Space.parse("space i over boolean\ncarrier a b\n")
    assert not indiscrete.is_s0()
    sob = indiscrete.sobrify()
    assert sob.xi == [0, 0] and len(sob.points) == 1 and sob.space.is_sober()

    # completion of a two-point antichain adds the join
    antichain = lconvex.Order(b, [[1, 0], [0, 1]])
    assert not antichain.is_join_semilattice()
    c = antichain.completion()
    assert len(c.points) == 3 and c.order.is_join_semilattice()
    assert not antichain.scott_structure().is_sober()
    assert c.order.scott_structure().is_sober()

    try:
        lconvex.Order(b, [[0, 1], [0, 1]])
    except ValueError as e:
        assert "E1" in str(e)
    else:
        raise AssertionError("a non-reflexive order was accepted")

    try:
        lconvex.Space.build(g, 3, [[1, 2, 0], [0, 1, 2]], max_family=2)
    except lconvex.BudgetExceeded:
        pass
    else:
        raise AssertionError("budget was not enforced")

    small = json.dumps({"space_points": 2, "space_samples": [], "order_samples": [], "universal_samples": 10})
    ok, report = lconvex.run_theorems(small, ["hull-laws", "sobriety-decision"])
    assert ok, report
    assert [c["id"] for c in json.loads(report)["checks"]] == ["hull-laws", "sobriety-decision"]
    assert "all-spaces-sober" in lconvex.search("any-equivalence", small, 3)
    print("python smoke test passed")


if __name__ == "__main__":
    main()
