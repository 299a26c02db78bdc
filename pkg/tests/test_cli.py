import io
import json
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import cli


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli.main(["--no-cache", "--seed", "7", *argv])
    return code, out.getvalue(), err.getvalue()


class TestCli(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def test_classify_json(self):
        code, out, _ = run("--format", "json", "classify", "SL(2,3)")
        self.assertEqual(code, 0)
        summary = json.loads(out)
        self.assertEqual(summary["flags"], {"monomial": False, "nam": True, "wam": True, "bam": True})
        self.assertEqual(len(summary["hilbert_basis"]), 8)

    def test_output_is_reproducible(self):
        self.assertEqual(run("--format", "json", "classify", "Sym(4)")[1],
                         run("--format", "json", "classify", "Sym(4)")[1])

    def test_classify_text_shows_witnesses(self):
        code, out, _ = run("classify", "GL(2,3)")
        self.assertEqual(code, 0)
        self.assertIn("WAM witnesses", out)
        self.assertIn("BAM counterexample: k = 8", out)

    def test_export_then_lfun(self):
        path = Path(self.tmp.name) / "a6.json"
        code, _, _ = run("export", "Alt(6)", "--output", str(path))
        self.assertEqual(code, 0)
        self.assertTrue(path.exists())
        code, out, _ = run("--format", "json", "lfun", "theorem4", "--source", str(path), "--k", "4", "--bound", "3")
        self.assertEqual(code, 0)
        self.assertTrue(json.loads(out)["passed"])

    def test_lfun_hilbert(self):
        code, out, _ = run("--format", "json", "lfun", "hilbert", "--d=-1,2")
        self.assertEqual(code, 0)
        self.assertEqual(sorted(map(tuple, json.loads(out)["hol_basis"])), [(0, 1), (1, 1), (2, 1)])

    def test_exit_codes(self):
        self.assertEqual(run("classify", "Perm[(1,1,2)]")[0], 1)
        self.assertEqual(run("classify", "Alt(5")[0], 1)
        self.assertEqual(run("--size-cap", "100", "classify", "Alt(6)")[0], 2)
        self.assertEqual(run("lfun", "admissible", "--source", "SL(2,3)", "--d=0,0")[0], 1)
        code, _, err = run("lfun", "theorem3", "--source", "SL(2,3)", "--d=-1,0,0,0,0,0,1")
        self.assertEqual(code, 1)
        self.assertIn("not admissible", err)

    def test_corpus(self):
        code, out, _ = run("corpus", "SL(2,3)", "Alt(5)")
        self.assertEqual(code, 0)
        self.assertEqual(out.count("OK"), 2)


if __name__ == "__main__":
    unittest.main()
