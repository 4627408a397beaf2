"""Builds the extension module and exercises it from Python.

Run from the repository root:  python3 python/smoke_test.py
"""

import importlib.util
import json
import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def build_module():
    subprocess.run(
        ["cargo", "build", "--release", "-p", "dynkin-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / "libdynkin.so"
    out = pathlib.Path(tempfile.mkdtemp()) / "dynkin.so"
    shutil.copy(lib, out)
    spec = importlib.util.spec_from_file_location("dynkin", out)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    dynkin = build_module()

    a2 = dynkin.RootSystem("A", 2)
    assert a2.label == "A2" and a2.rank == 2 and a2.dim == 8
    assert a2.positive_roots() == [[1, 0], [0, 1], [1, 1]]
    assert a2.gram() == [["2/3", "1/3"], ["1/3", "2/3"]]
    assert len(a2.sign_types()) == a2.catalan_number() == 5
    assert a2.norm_squared(["1/2", "1/2"]) == "1/2"

    g2 = dynkin.RootSystem("G", 2)
    assert len(g2.positive_roots()) == 6
    assert json.loads(g2.dump_json())["rank"] == 2

    x, active, mult = dynkin.min_norm_point(
        2, [([1, 0], ">=", "1"), ([0, 1], ">=", "1")], a2.gram()
    )
    assert x == ["1", "1"] and active == [0, 1], (x, active, mult)
    theta_only = a2.sign_types().index("00+")
    assert a2.region_min_point(theta_only)[0] == ["1/2", "1/2"]

    try:
        dynkin.min_norm_point(1, [([1], ">=", "1"), ([1], "<=", "0")], [["1"]])
    except ValueError as e:
        assert "empty" in str(e)
    else:
        raise AssertionError("empty polyhedron accepted")

    try:
        dynkin.RootSystem("G", 3)
    except ValueError:
        pass
    else:
        raise AssertionError("G3 accepted")

    report = json.loads(dynkin.verify("B", 2, seed=1, checks="theorem,prop31"))
    assert report["status"] == "pass"
    assert report["theorem"]["orbit_count"] == 4
    half = report["theorem"]["half_dynkin_set"]
    assert ["0", "1/2"] in half and ["1", "1/2"] not in half
    again = dynkin.verify("B", 2, seed=1, checks="theorem,prop31")
    assert json.loads(again) == report

    print("smoke test passed")


if __name__ == "__main__":
    sys.exit(main())
