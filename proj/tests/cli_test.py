"""End-to-end checks of the gapfill command line: exit codes, file formats,
determinism, and the shift property. Run with GAPFILL_BIN pointing at the
built binary."""

import math
import os
import re
import subprocess
import sys
import tempfile

BIN = os.environ["GAPFILL_BIN"]
FAILURES = []


def run(*args, **kwargs):
    return subprocess.run([BIN, *args], capture_output=True, text=True,
                          **kwargs)


def check(name, condition, detail=""):
    status = "ok" if condition else "FAIL"
    print(f"  {status:4s} {name}" + (f"  ({detail})" if detail else ""))
    if not condition:
        FAILURES.append(name)


def write_signal(path, start, values, missing):
    with open(path, "w") as f:
        f.write("t,value,observed\n")
        for i, v in enumerate(values):
            t = start + i
            obs = 0 if t in missing else 1
            f.write(f"{t},{v!r},{obs}\n")


def main():
    tmp = tempfile.mkdtemp(prefix="gapfill_cli_")

    # kernel: summary line, constant-w value, JSON output, validation exit.
    r = run("kernel", "--missing", "0", "--n", "4")
    check("kernel constant-w summary", r.returncode == 0
          and r.stdout.startswith("kappa 3 "), r.stdout.strip())

    kpath = os.path.join(tmp, "k.json")
    r = run("kernel", "--missing", "0,3", "--n", "15", "--radius", "300",
            "--out", kpath)
    check("kernel writes JSON", r.returncode == 0 and os.path.exists(kpath))

    r = run("kernel", "--missing", "0,3", "--n", "1")
    check("kernel rejects n=1 with exit 2", r.returncode == 2, r.stderr.strip())

    r = run("kernel", "--missing", "0,3")
    check("missing required flag is exit 2", r.returncode == 2)

    # recover: plumbing, mask-mismatch exit, kernel-file path, shift property.
    N = 60
    x = [math.cos(0.9 * t) for t in range(-N, N + 1)]
    xpath = os.path.join(tmp, "x.csv")
    write_signal(xpath, -N, x, {0, 3})

    r = run("recover", "--missing", "0,3", "--n", "8", "--radius", "40",
            "--input", xpath, "--truth", xpath)
    check("recover prints estimates and error", r.returncode == 0
          and "x[0] =" in r.stdout and "relative_error" in r.stdout)
    base = {m.group(1): m.group(2)
            for m in re.finditer(r"x\[(-?\d+)\] = (\S+)", r.stdout)}

    shift = 7
    ypath = os.path.join(tmp, "y.csv")
    write_signal(ypath, -N + shift, x, {shift, 3 + shift})
    r = run("recover", "--missing", "0,3", "--n", "8", "--radius", "40",
            "--input", ypath, "--shift", str(shift))
    shifted = {m.group(1): m.group(2)
               for m in re.finditer(r"x\[(-?\d+)\] = (\S+)", r.stdout)}
    check("shift 7 equals shifting the input by 7",
          shifted.get(str(shift)) == base.get("0")
          and shifted.get(str(3 + shift)) == base.get("3"))

    r = run("recover", "--kernel", kpath, "--input", xpath,
            "--allow-truncated")
    check("recover accepts a kernel file", r.returncode == 0)

    badpath = os.path.join(tmp, "bad.csv")
    write_signal(badpath, -N, x, {0})
    r = run("recover", "--missing", "0,3", "--n", "8", "--radius", "40",
            "--input", badpath)
    check("mask mismatch is exit 4 naming the index",
          r.returncode == 4 and "3" in r.stderr, r.stderr.strip())

    # diagnose: functional values on a fully observed signal.
    fullpath = os.path.join(tmp, "full.csv")
    write_signal(fullpath, -N, x, set())
    r = run("diagnose", "--missing", "0,3", "--n", "8", "--input", fullpath)
    check("diagnose reports zeta and psi", r.returncode == 0
          and r.stdout.startswith("zeta "), r.stdout.strip())

    # bench: determinism byte for byte, robustness line, report files.
    args = ("bench", "--missing", "0,3", "--n", "8", "--N", "50",
            "--nbar", "4", "--trials", "5", "--seed", "11")
    j1 = os.path.join(tmp, "r1.json")
    j2 = os.path.join(tmp, "r2.json")
    r1 = run(*args, "--json", j1, "--csv", os.path.join(tmp, "r1.csv"))
    r2 = run(*args, "--json", j2)
    check("bench runs", r1.returncode == 0 and "mean" in r1.stdout)
    # Summary lines must match byte for byte; "wrote <path>" lines differ.
    same_stdout = r1.stdout.splitlines()[:2] == r2.stdout.splitlines()[:2]
    with open(j1) as f1, open(j2) as f2:
        check("bench reruns identical", same_stdout and f1.read() == f2.read())

    r = run(*args, "--sigma", "0.1")
    check("bench with noise prints the bound",
          r.returncode == 0 and "robustness_bound" in r.stdout)

    r = run("bench", "--missing", "0,3", "--n", "8", "--N", "50",
            "--trials", "0", "--seed", "1")
    check("bench rejects zero trials with exit 2", r.returncode == 2)

    # help coverage: every flag mentioned.
    r = run("--help")
    check("top-level help lists subcommands",
          all(s in r.stdout for s in ("kernel", "recover", "diagnose",
                                      "bench")))
    for sub, flags in [
        ("kernel", ["--missing", "--n", "--radius", "--out"]),
        ("recover", ["--kernel", "--missing", "--n", "--radius", "--input",
                     "--truth", "--out", "--shift", "--allow-truncated"]),
        ("diagnose", ["--missing", "--n", "--input", "--grid"]),
        ("bench", ["--missing", "--n", "--N", "--eps", "--nbar", "--trials",
                   "--seed", "--sigma", "--json", "--csv"]),
    ]:
        r = run(sub, "--help")
        check(f"{sub} --help covers its flags",
              all(f in r.stdout for f in flags))

    print(f"{len(FAILURES)} failures")
    return 1 if FAILURES else 0


if __name__ == "__main__":
    sys.exit(main())
