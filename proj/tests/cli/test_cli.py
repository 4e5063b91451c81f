"""End-to-end checks of the latdsp command line tool.

Usage: test_cli.py path/to/latdsp. Every fixture is generated below; the
suite touches nothing outside its temporary directory.
"""

import os
import re
import subprocess
import sys
import tempfile
import unittest

BIN = None

LAT8 = """\
elem a
elem b
elem c
elem d
elem e
elem f
elem g
elem h
cover b a
cover c a
cover d a
cover e b
cover f b
cover f c
cover f d
cover g d
cover h e
cover h f
"""

NOMEET = """\
elem a
elem b
elem c
elem d
elem e
cover b a
cover c a
cover d b
cover d c
cover e b
cover e c
"""

SIG8 = {"a": 2, "b": 1, "c": 2, "d": 5, "e": 5, "f": 4, "g": 5, "h": 8}

# Seven telecom users against eight binary properties; churn flags alongside.
TELCO = {
    "U1": "P2 P4 P8",
    "U2": "P1 P4 P5 P7 P8",
    "U3": "P4 P8",
    "U4": "P1 P2 P3",
    "U5": "P1 P2 P3 P4 P5 P7 P8",
    "U6": "P2 P3",
    "U7": "P2 P3 P4 P6",
}
CHURN = {"U1": 1, "U2": 0, "U3": 1, "U4": 0, "U5": 1, "U6": 0, "U7": 1}


def run(*args, env=None, cwd=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(
        [BIN] + [str(a) for a in args],
        capture_output=True,
        text=True,
        env=full_env,
        cwd=cwd,
    )


def parse_value(text):
    text = text.strip()
    if not text.endswith("i"):
        return complex(float(text), 0.0)
    body = text[:-1]
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "eE":
            return complex(float(body[:k]), float(body[k:]))
    return complex(0.0, float(body))


def parse_csv(text):
    lines = text.strip().splitlines()
    if not lines or lines[0] != "element,value":
        raise AssertionError("bad signal csv: %r" % text[:80])
    out = {}
    for line in lines[1:]:
        name, _, val = line.partition(",")
        out[name] = parse_value(val)
    return out


class CliTest(unittest.TestCase):
    tmp = None

    @classmethod
    def setUpClass(cls):
        cls.tmp = tempfile.TemporaryDirectory(prefix="latdsp-cli-")
        cls.write("lat8.txt", LAT8)
        cls.write("nomeet.txt", NOMEET)
        sig = "element,value\n"
        for name, val in SIG8.items():
            sig += "%s,%d\n" % (name, val)
        cls.write("sig8.csv", sig)
        ctx = "," + ",".join("P%d" % p for p in range(1, 9)) + "\n"
        for user, props in TELCO.items():
            props = props.split()
            row = ["1" if "P%d" % p in props else "" for p in range(1, 9)]
            ctx += user + "," + ",".join(row) + "\n"
        cls.write("telco.csv", ctx)
        labels = "object,value\n"
        for user, flag in CHURN.items():
            labels += "%s,%d\n" % (user, flag)
        cls.write("churn.csv", labels)

    @classmethod
    def tearDownClass(cls):
        cls.tmp.cleanup()

    @classmethod
    def path(cls, name):
        return os.path.join(cls.tmp.name, name)

    @classmethod
    def write(cls, name, text):
        with open(cls.path(name), "w") as f:
            f.write(text)
        return cls.path(name)

    @classmethod
    def read(cls, name):
        with open(cls.path(name)) as f:
            return f.read()

    def ok(self, *args, **kw):
        proc = run(*args, **kw)
        self.assertEqual(proc.returncode, 0, msg=proc.stderr or proc.stdout)
        return proc

    # ---- validate ----

    def test_validate_report(self):
        proc = self.ok("validate", self.path("lat8.txt"))
        self.assertIn("meet-semilattice", proc.stdout)
        self.assertIn("8 elements", proc.stdout)
        self.assertIn("minimum a", proc.stdout)
        gens = re.search(r"generators ([\w,]+)", proc.stdout)
        self.assertTrue(gens)
        self.assertEqual(set(gens.group(1).split(",")), {"c", "e", "f", "g", "h"})

    def test_validate_witness(self):
        proc = run("validate", self.path("nomeet.txt"))
        self.assertEqual(proc.returncode, 2)
        self.assertIn("poset", proc.stdout)
        self.assertIn("no meet: witness (d,e)", proc.stdout)
        self.assertIn("no join: witness (b,c)", proc.stdout)

    def test_validate_singleton(self):
        path = self.write("one.txt", "elem only\n")
        proc = self.ok("validate", path)
        self.assertIn("lattice; 1 element", proc.stdout)

    def test_validate_require(self):
        proc = run("validate", self.path("lat8.txt"), "--require", "lattice")
        self.assertEqual(proc.returncode, 2)
        self.assertIn("no join: witness", proc.stdout)
        self.ok("validate", self.path("lat8.txt"), "--require", "meet")

    def test_validate_json_form(self):
        elements = ["a", "b", "c", "d", "e", "f", "g", "h"]
        covers = [line.split()[1:] for line in LAT8.splitlines() if line.startswith("cover")]
        body = '{"elements": %s, "covers": %s}' % (
            str(elements).replace("'", '"'),
            str(covers).replace("'", '"'),
        )
        path = self.write("lat8.json", body)
        text = self.ok("validate", self.path("lat8.txt")).stdout
        self.assertEqual(self.ok("validate", path).stdout, text)

    # ---- transforms ----

    def test_dlt_sparse(self):
        proc = self.ok("dlt", "--lattice", self.path("lat8.txt"), "--signal",
                       self.path("sig8.csv"), "--variant", "meet")
        spec = parse_csv(proc.stdout)
        nonzero = {k: v.real for k, v in spec.items() if v != 0}
        self.assertEqual(nonzero, {"a": 2.0, "b": -1.0, "d": 3.0, "e": 4.0})
        again = self.ok("dlt", "--lattice", self.path("lat8.txt"), "--signal",
                        self.path("sig8.csv"), "--variant", "meet")
        self.assertEqual(again.stdout, proc.stdout)
        fast = self.ok("dlt", "--lattice", self.path("lat8.txt"), "--signal",
                       self.path("sig8.csv"), "--variant", "meet", "--fast", "--check")
        self.assertEqual(fast.stdout, proc.stdout)

    def test_transform_round_trip(self):
        self.ok("dlt", "--lattice", self.path("lat8.txt"), "--signal",
                self.path("sig8.csv"), "--variant", "meet", "-o", self.path("spec.csv"))
        proc = self.ok("idlt", "--lattice", self.path("lat8.txt"), "--signal",
                       self.path("spec.csv"), "--variant", "meet")
        back = parse_csv(proc.stdout)
        for name, val in SIG8.items():
            self.assertEqual(back[name], complex(val))

    def test_lowpass_and_response(self):
        lp = self.ok("filter", "--lattice", self.path("lat8.txt"), "--lowpass",
                     "--variant", "meet", "-o", self.path("lp.csv"))
        taps = parse_csv(self.read("lp.csv"))
        want = {"a": 0, "b": 0, "c": 1, "d": -1, "e": 1, "f": 1, "g": 2, "h": 2}
        self.assertEqual({k: v.real for k, v in taps.items()}, {k: float(v) for k, v in want.items()})
        fr = self.ok("freqresp", "--lattice", self.path("lat8.txt"), "--filter",
                     self.path("lp.csv"), "--variant", "meet", "-o", self.path("fr.csv"))
        resp = parse_csv(self.read("fr.csv"))
        want = {"a": 6, "b": 4, "c": 4, "d": 4, "e": 3, "f": 3, "g": 2, "h": 2}
        self.assertEqual({k: v.real for k, v in resp.items()}, {k: float(v) for k, v in want.items()})
        # designing from that response recovers the taps
        back = self.ok("filter", "--lattice", self.path("lat8.txt"), "--response",
                       self.path("fr.csv"), "--variant", "meet")
        self.assertEqual(back.stdout, self.read("lp.csv"))

    def test_shift_by_minimum(self):
        proc = self.ok("shift", "--lattice", self.path("lat8.txt"), "--signal",
                       self.path("sig8.csv"), "--by", "a", "--variant", "meet")
        vals = parse_csv(proc.stdout)
        self.assertEqual(set(vals.values()), {complex(2.0)})

    def test_convolve_matches_lowpass_response(self):
        # all-ones input turns convolution into the frequency response column sums
        ones = "element,value\n" + "".join("%s,1\n" % k for k in SIG8)
        self.write("ones.csv", ones)
        self.ok("filter", "--lattice", self.path("lat8.txt"), "--lowpass",
                "--variant", "meet", "-o", self.path("conv-lp.csv"))
        conv = self.ok("convolve", "--lattice", self.path("lat8.txt"), "--filter",
                       self.path("conv-lp.csv"), "--signal", self.path("ones.csv"),
                       "--variant", "meet")
        vals = parse_csv(conv.stdout)
        self.assertEqual(vals["a"], complex(6.0))
        self.assertEqual(vals["h"], complex(6.0))

    def test_tv_constant_signal(self):
        delta = "element,value\n" + "".join(
            "%s,%d\n" % (k, 1 if k == "a" else 0) for k in SIG8)
        self.write("delta.csv", delta)
        self.ok("idlt", "--lattice", self.path("lat8.txt"), "--signal",
                self.path("delta.csv"), "--variant", "meet", "-o", self.path("flat.csv"))
        vals = parse_csv(self.read("flat.csv"))
        self.assertEqual(set(vals.values()), {complex(1.0)})
        proc = self.ok("tv", "--lattice", self.path("lat8.txt"), "--signal",
                       self.path("flat.csv"), "--variant", "meet")
        self.assertTrue(proc.stdout.strip().splitlines()[-1] == "total,0")

    # ---- sampling pipeline ----

    def test_pipeline(self):
        self.ok("support", "--lattice", self.path("lat8.txt"), "--signal",
                self.path("sig8.csv"), "--variant", "meet", "-o", self.path("sup.txt"))
        self.assertEqual(self.read("sup.txt").split(), ["a", "b", "d", "e"])
        self.ok("sample", "--lattice", self.path("lat8.txt"), "--signal",
                self.path("sig8.csv"), "--support", self.path("sup.txt"),
                "--variant", "meet", "-o", self.path("sam.csv"))
        samples = parse_csv(self.read("sam.csv"))
        self.assertEqual(len(samples), 4)
        proc = self.ok("reconstruct", "--lattice", self.path("lat8.txt"), "--samples",
                       self.path("sam.csv"), "--plan", self.path("sup.txt"),
                       "--variant", "meet")
        back = parse_csv(proc.stdout)
        self.assertEqual(back, {k: complex(v) for k, v in SIG8.items()})

    # ---- concept lattices ----

    def test_fcl(self):
        proc = self.ok("fcl", "--context", self.path("telco.csv"), "-o",
                       self.path("cl.txt"))
        self.assertIn("14 concepts; 7 objects; 8 attributes", proc.stderr)
        text = self.read("cl.txt")
        self.assertEqual(len(re.findall(r"^elem ", text, re.M)), 14)
        self.assertEqual(len(re.findall(r"^# c\d+: extent \{", text, re.M)), 14)
        self.assertIn("lattice; 14 elements",
                      self.ok("validate", self.path("cl.txt")).stdout)

        self.ok("fcl", "--context", self.path("telco.csv"), "--labels",
                self.path("churn.csv"), "--signal-out", self.path("churn-sig.csv"),
                "-o", self.path("cl.txt"))
        signal = self.read("churn-sig.csv")
        rows = signal.strip().splitlines()[1:]
        self.assertEqual(len(rows), 14)
        # the bottom concept covers every user, so it carries the churn mean
        name, _, val = rows[0].partition(",")
        self.assertEqual(name, "c0")
        self.assertAlmostEqual(float(val), 4.0 / 7.0, places=12)

    def test_fcl_missing_label(self):
        labels = "object,value\n" + "".join(
            "%s,%d\n" % (u, f) for u, f in CHURN.items() if u != "U7")
        self.write("short.csv", labels)
        proc = run("fcl", "--context", self.path("telco.csv"), "--labels",
                   self.path("short.csv"), "--signal-out", self.path("x.csv"))
        self.assertEqual(proc.returncode, 2)
        self.assertIn("U7", proc.stderr)

    # ---- multiset lattices ----

    def test_multiset_gen(self):
        proc = self.ok("multiset", "gen", "--m", "6,14,9", "-o", self.path("big.txt"))
        self.assertEqual(proc.stdout, "")
        text = self.read("big.txt")
        self.assertEqual(len(re.findall(r"^elem ", text, re.M)), 1050)
        self.assertIn("lattice; 1050 elements",
                      self.ok("validate", self.path("big.txt")).stdout)

    def test_multiset_bidder(self):
        a = self.ok("multiset", "bidder", "--m", "6,14,9", "--type", "secondary",
                    "--seed", "1", "--variant", "join")
        b = self.ok("multiset", "bidder", "--m", "6,14,9", "--type", "secondary",
                    "--seed", "1", "--variant", "join")
        self.assertEqual(a.stdout, b.stdout)
        c = self.ok("multiset", "bidder", "--m", "6,14,9", "--type", "primary",
                    "--seed", "1", "--variant", "join")
        self.assertNotEqual(a.stdout, c.stdout)
        vals = parse_csv(a.stdout)
        self.assertEqual(len(vals), 1050)
        self.assertTrue(all(v.real >= 0 for v in vals.values()))
        bad = run("multiset", "bidder", "--m", "2,2", "--type", "landlord",
                  "--seed", "1", "--variant", "join")
        self.assertEqual(bad.returncode, 1)

    # ---- noise and Wiener filtering ----

    def test_noise(self):
        proc = self.ok("noise", "--lattice", self.path("lat8.txt"), "--sigma", "0",
                       "--seed", "5", "--variant", "meet")
        self.assertEqual(set(parse_csv(proc.stdout).values()), {complex(0.0)})
        one = self.ok("noise", "--lattice", self.path("lat8.txt"), "--sigma", "1.5",
                      "--seed", "5", "--variant", "meet")
        two = self.ok("noise", "--lattice", self.path("lat8.txt"), "--sigma", "1.5",
                      "--seed", "5", "--variant", "meet")
        self.assertEqual(one.stdout, two.stdout)
        other = self.ok("noise", "--lattice", self.path("lat8.txt"), "--sigma", "1.5",
                        "--seed", "6", "--variant", "meet")
        self.assertNotEqual(one.stdout, other.stdout)
        missing = run("noise", "--lattice", self.path("lat8.txt"), "--sigma", "1",
                      "--variant", "meet")
        self.assertEqual(missing.returncode, 1)

    def test_wiener_round_trip(self):
        self.ok("wiener", "fit", "--lattice", self.path("lat8.txt"), "--order", "0",
                "--ref", self.path("sig8.csv"), "--noisy", self.path("sig8.csv"),
                "--variant", "meet", "-o", self.path("model.json"))
        import json
        model = json.loads(self.read("model.json"))
        self.assertEqual(model["order"], 0)
        self.assertAlmostEqual(model["coefficients"][0][0], 1.0, places=8)
        self.assertAlmostEqual(model["coefficients"][0][1], 0.0, places=8)
        proc = self.ok("wiener", "apply", "--lattice", self.path("lat8.txt"),
                       "--model", self.path("model.json"), "--signal",
                       self.path("sig8.csv"), "--variant", "meet")
        vals = parse_csv(proc.stdout)
        for name, val in SIG8.items():
            self.assertAlmostEqual(abs(vals[name] - val), 0.0, places=8)

    # ---- DOT export ----

    def test_export_dot(self):
        proc = self.ok("export-dot", "--lattice", self.path("lat8.txt"))
        self.assertTrue(proc.stdout.startswith("digraph lattice {"))
        self.assertEqual(proc.stdout.count("->"), 10)
        self.assertIn('"a" -> "b";', proc.stdout)
        dual = self.ok("export-dot", "--lattice", self.path("lat8.txt"), "--dual")
        self.assertIn('"b" -> "a";', dual.stdout)
        self.assertEqual(dual.stdout.count("->"), 10)
        overlay = self.ok("export-dot", "--lattice", self.path("lat8.txt"),
                          "--signal", self.path("sig8.csv"))
        self.assertIn('"a" [label="a\\n2"];', overlay.stdout)
        self.assertEqual(overlay.stdout,
                         self.ok("export-dot", "--lattice", self.path("lat8.txt"),
                                 "--signal", self.path("sig8.csv")).stdout)

    # ---- error handling ----

    def test_exit_codes(self):
        self.assertEqual(run("frobnicate").returncode, 1)
        self.assertEqual(run("dlt", "--lattice", self.path("lat8.txt")).returncode, 1)
        self.assertEqual(run("--help").returncode, 0)

        bad = self.write("bad.csv", "value,element\na,1\n")
        proc = run("dlt", "--lattice", self.path("lat8.txt"), "--signal", bad,
                   "--variant", "meet")
        self.assertEqual(proc.returncode, 1)
        self.assertIn("line 1", proc.stderr)

        proc = run("dlt", "--lattice", self.path("lat8.txt"), "--signal",
                   self.path("sig8.csv"), "--variant", "join")
        self.assertEqual(proc.returncode, 2)

        proc = run("shift", "--lattice", self.path("lat8.txt"), "--signal",
                   self.path("sig8.csv"), "--by", "zz", "--variant", "meet")
        self.assertEqual(proc.returncode, 2)

        chain = self.write("chain.txt",
                           "elem a\nelem b\nelem c\ncover b a\ncover c b\ncover c a\n")
        self.assertEqual(run("validate", chain).returncode, 2)
        self.assertEqual(run("validate", chain, "--reduce").returncode, 0)

        torn = self.write("torn.txt", "elem a\nelem b\ncover b\n")
        proc = run("validate", torn)
        self.assertEqual(proc.returncode, 1)
        self.assertIn("line 3", proc.stderr)

    def test_max_n_env(self):
        proc = run("multiset", "gen", "--m", "2,1",
                   env={"LATTICE_DSP_MAX_N": "0"})
        self.assertEqual(proc.returncode, 2)
        self.ok("multiset", "gen", "--m", "2,1", env={"LATTICE_DSP_MAX_N": "100"})
        proc = run("multiset", "gen", "--m", "2,1",
                   env={"LATTICE_DSP_MAX_N": "abc"})
        self.assertEqual(proc.returncode, 1)


if __name__ == "__main__":
    if len(sys.argv) < 2:
        print("usage: test_cli.py path/to/latdsp", file=sys.stderr)
        sys.exit(2)
    BIN = os.path.abspath(sys.argv.pop(1))
    unittest.main(verbosity=2)
