#!/usr/bin/env python3
"""End-to-end checks of the command line tool: JSON shapes, exit codes,
file ingestion, and the grid-scale environment knob."""

import json
import math
import os
import subprocess
import sys
import tempfile

BIN = sys.argv[1] if len(sys.argv) > 1 else "build/tml"
FAILURES = []


def run(*args, env_extra=None, expect_code=0):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    proc = subprocess.run([BIN, *args], capture_output=True, text=True, env=env)
    if proc.returncode != expect_code:
        FAILURES.append(f"{args}: exit {proc.returncode}, expected {expect_code}\n"
                        f"stdout: {proc.stdout[:400]}\nstderr: {proc.stderr[:400]}")
        return None
    return proc.stdout


def check(cond, label):
    if not cond:
        FAILURES.append(label)


def jrun(*args, **kw):
    out = run(*args, **kw)
    return json.loads(out) if out else None


def write_curve_csv(path, points):
    with open(path, "w") as f:
        f.write("t,x1,y1,x2,y2\n")
        n = len(points)
        for i, p in enumerate(points):
            f.write(f"{2 * math.pi * i / n:.17g}," + ",".join(f"{c:.17g}" for c in p) + "\n")


def main():
    tmp = tempfile.mkdtemp(prefix="tml_cli_")

    # classification examples
    j = jrun("group", "classify", "--matrix", "0,1,1,0")
    check(j and j["tag"] == "GmuMinus", "classify f1 -> GmuMinus")
    j = jrun("group", "classify", "--matrix", "1,1,0,1")
    check(j and j["tag"] == "NotMember", "classify shear -> NotMember")
    j = jrun("group", "classify", "--matrix", "1,2,0,1")
    check(j and j["tag"] == "E", "classify twist -> E")
    run("group", "classify", "--matrix", "2,0,0,2", expect_code=2)
    run("group", "classify", "--matrix", "not-a-matrix", expect_code=2)
    run("group", "classify", expect_code=2)  # missing required option

    # decomposition round-trips through text
    j = jrun("group", "decompose", "--matrix", "0,-1,1,2", "--target", "gmu")
    check(j and j["word"] == ["F1", "F0"] and j["verified"], "decompose g_1")
    j = jrun("group", "decompose", "--matrix", "-3,2,-2,1", "--target", "e")
    check(j and j["word"] == ["T1P2", "T2P2"], "decompose twist product")
    j = jrun("group", "decompose", "--matrix", "1,2,0,1", "--target", "x")
    check(j and j["word"] == ["F1", "R1", "F1", "F0"], "decompose twist over reflections")
    run("group", "decompose", "--matrix", "1,1,0,1", "--target", "x", expect_code=2)

    # defect and matching
    j = jrun("group", "defect", "--matrix", "1,2,0,1")
    check(j and j["defect"] == [0, 4] and j["divisible_by_4"], "defect of tau1^2")
    j = jrun("group", "match-maslov", "--nu", "6,10")
    check(j and j["matrix"] == "2,3,1,2", "match nu=(6,10)")
    run("group", "match-maslov", "--nu", "4,2", expect_code=2)

    # maslov class values and the trace artifact
    j = jrun("maslov", "class", "--a", "1", "--b", "1", "--n1", "1", "--n2", "0")
    check(j and j["index"] == 2, "maslov gamma1 = 2")
    trace = os.path.join(tmp, "phase.csv")
    j = jrun("maslov", "class", "--a", "1", "--b", "3", "--n1", "1", "--n2", "1",
             "--trace", trace)
    check(j and j["index"] == 4, "maslov (1,1) = 4")
    with open(trace) as f:
        lines = f.read().strip().splitlines()
    check(lines[0] == "t,phase" and len(lines) == 257, "phase trace rows")

    # curve files: homology class and framing index
    n = 256
    curve = os.path.join(tmp, "gamma11.csv")
    write_curve_csv(curve, [(math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n),
                             3 * math.cos(2 * math.pi * i / n),
                             3 * math.sin(2 * math.pi * i / n)) for i in range(n)])
    j = jrun("geom", "class", "--curve", curve, "--a", "1", "--b", "3")
    check(j and j["class"] == [1, 1], "geom class of the (1,1) curve")
    j = jrun("maslov", "framing", "--curve", curve, "--m", "2")
    check(j and j["index"] == 4, "framing index 2m on csv curve")

    # linking: push-off vanishes, meridian from csv links once
    j = jrun("linking", "eval", "--a", "1", "--b", "1", "--n1", "1", "--n2", "0",
             "--eps", "0.1")
    check(j and j["rounded"] == 0 and abs(j["raw"]) < 0.05, "linking eval (1,0) -> 0")

    mer = os.path.join(tmp, "meridian.csv")
    write_curve_csv(mer, [(1 + 0.4 * math.cos(2 * math.pi * i / 64), 0,
                           1 + 0.4 * math.sin(2 * math.pi * i / 64), 0) for i in range(64)])
    surf = os.path.join(tmp, "torus.csv")
    with open(surf, "w") as f:
        f.write("t1,t2,x1,y1,x2,y2\n")
        m = 48
        for i in range(m):
            for k in range(m):
                t1 = 2 * math.pi * i / m
                t2 = 2 * math.pi * k / m
                f.write(f"{t1:.17g},{t2:.17g},{math.cos(t1):.17g},{math.sin(t1):.17g},"
                        f"{math.cos(t2):.17g},{math.sin(t2):.17g}\n")
    j = jrun("linking", "raw", "--curve", mer, "--surface", surf, "--grid", "48")
    check(j and j["rounded"] == 1, "linking raw meridian vs sampled torus")
    check(j and "central-difference" in j["method"], "sampled surface method")

    # simulations
    j = jrun("simulate", "case1", "--b", "1")
    check(j and j["monodromy"] == "0,1,1,0", "case1 monodromy")
    j = jrun("simulate", "case2", "--b", "1", "--eps", "0.05", "--ns", "512", "--nt", "256")
    check(j and j["monodromy"] == "1,2,0,-1", "case2 monodromy")
    j = jrun("simulate", "case2", "--variant", "--b", "1", "--eps", "0.05",
             "--ns", "512", "--nt", "256")
    check(j and j["monodromy"] == "-1,0,2,1", "case2 variant monodromy")

    # h1 map of the squared twist
    mp = os.path.join(tmp, "map.csv")
    with open(mp, "w") as f:
        f.write("theta,t,f,g\n")
        m = 64
        for i in range(m):
            for k in range(m):
                th = 2 * math.pi * i / m
                tt = 2 * math.pi * k / m
                f.write(f"{th:.17g},{tt:.17g},{th + 2 * tt:.17g},{tt:.17g}\n")
    j = jrun("simulate", "h1map", "--map", mp)
    check(j and j["matrix"] == "1,2,0,1" and j["tag"] == "E", "h1map of squared twist")

    # grid scaling through the environment
    j = jrun("maslov", "class", "--a", "1", "--b", "1", "--n1", "1", "--n2", "0",
             env_extra={"TML_GRID_SCALE": "2"})
    check(j and j["samples"] == 512, "TML_GRID_SCALE doubles defaults")
    run("group", "classify", "--matrix", "1,0,0,1",
        env_extra={"TML_GRID_SCALE": "zero"}, expect_code=2)

    # verify-all: bad config is a usage error, self-test failure exits 1
    run("verify-all", "--ns", "256", expect_code=2)
    out = run("verify-all", "--self-test-fail", expect_code=1)
    if out:
        rep = json.loads(out)
        check(not rep["overall_pass"], "self-test: overall fails")
        bad = [r for r in rep["records"] if not r["pass"]]
        check(any(r["name"] == "c02/case1/monodromy" for r in bad),
              "self-test: corrupted record is the failing one")
        # only the corrupted expectation and the determinism comparison react
        check(all(r["name"] in ("c02/case1/monodromy",) for r in bad),
              "self-test: no collateral failures")

    # --out writes a file instead of stdout
    outfile = os.path.join(tmp, "out.json")
    run("group", "classify", "--matrix", "0,1,1,0", "--out", outfile)
    with open(outfile) as f:
        check(json.load(f)["tag"] == "GmuMinus", "--out file content")

    if FAILURES:
        print("FAILED CLI checks:")
        for f in FAILURES:
            print(" -", f)
        sys.exit(1)
    print("cli: all checks passed")


if __name__ == "__main__":
    main()
