"""Smoke test for the pytetra bindings.

Build and install first:
    pip install --no-build-isolation -e crates/tetra-py
"""

import json

import pytetra


def main():
    alg = pytetra.sample_leibniz2((3, 1), seed=0)
    assert alg.dims == (3, 1)
    assert alg.check()["passed"]

    sol = alg.zte()
    report = sol.verify()
    assert report["passed"], report
    assert report["flags"]["z5_equal"]

    dim, bbar = sol.decategorify()
    assert len(bbar) == dim * dim
    assert pytetra.ybe(bbar, dim)

    again = pytetra.Leibniz2Algebra.from_json(alg.to_json())
    assert again.to_json() == alg.to_json()

    rack = pytetra.sample_rack((2, 1), seed=1)
    assert rack.check()["passed"]
    assert rack.zte().verify()["passed"]

    fin = pytetra.z2_z3_rack()
    assert fin.check()["passed"]

    code, out = pytetra.run(["finrack", "build-2group", "--no-timing"])
    assert code == 0 and json.loads(out)["passed"]

    try:
        pytetra.ZteSolution.from_json("{}")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed input must raise ValueError")

    print("pytetra smoke test passed")


if __name__ == "__main__":
    main()
