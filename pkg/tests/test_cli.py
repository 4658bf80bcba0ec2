import csv
import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout

from concave_hankel.cli import EXIT_IO, main
from concave_hankel.export import BOUNDS_HEADER


def run(*argv):
    stdout, stderr = io.StringIO(), io.StringIO()
    with redirect_stdout(stdout), redirect_stderr(stderr):
        code = main(list(argv))
    return code, stdout.getvalue()


class BoundsCommandTests(unittest.TestCase):
    def test_table(self):
        code, output = run('bounds', '--p', '0.5', '--grid', '8', '--iters', '0')
        self.assertEqual(code, 0)
        self.assertIn('0.666667', output)
        self.assertIn('1.333333', output)
        self.assertIn('1.233333', output)

    def test_rows_ascend(self):
        code, output = run('bounds', '--p', '0.7,0.2,0.5', '--grid', '8', '--iters', '0')
        rows = output.splitlines()[1:]
        self.assertEqual(len(rows), 3)
        self.assertEqual([float(row.split()[0]) for row in rows], [0.2, 0.5, 0.7])

    def test_bad_pole(self):
        with redirect_stderr(io.StringIO()), self.assertRaises(SystemExit) as cm:
            main(['bounds', '--p', '1.5'])
        self.assertEqual(cm.exception.code, 2)

    def test_csv_round_trip(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'bounds.csv')
            code, _ = run('bounds', '--p', '0.3,0.6', '--grid', '8', '--iters', '0', '--out', path)
            self.assertEqual(code, 0)
            with open(path, newline='') as handle:
                rows = list(csv.reader(handle))
        self.assertEqual(tuple(rows[0]), BOUNDS_HEADER)
        self.assertEqual([float(row[0]) for row in rows[1:]], [0.3, 0.6])
        for row in rows[1:]:
            p, one_third, lower, estimate, upper, outer = map(float, row)
            self.assertEqual(one_third, 1 / (3 * p))
            self.assertLessEqual(lower, estimate)
            self.assertLessEqual(estimate, upper + 1e-6)
            self.assertLessEqual(upper, outer)


class RegionCommandTests(unittest.TestCase):
    def test_omega_csv(self):
        code, output = run('region', '--p', '0.5', '--what', 'omega', '--n-theta', '64')
        self.assertEqual(code, 0)
        rows = list(csv.reader(io.StringIO(output)))
        self.assertEqual(rows[0], ['re', 'im', 'kind'])
        self.assertEqual(len(rows), 1 + 65)
        self.assertTrue(all(row[2] == 'omega_boundary' for row in rows[1:]))
        first, middle = rows[1], rows[1 + 32]
        self.assertAlmostEqual(float(first[0]), -1, places=14)
        self.assertAlmostEqual(float(first[1]), 0, places=14)
        self.assertAlmostEqual(float(middle[0]), 0.36, places=14)

    def test_svg(self):
        code, output = run('region', '--p', '0.5', '--samples', '200', '--n-theta', '64', '--format', 'svg')
        self.assertEqual(code, 0)
        self.assertIn('<svg', output)
        self.assertEqual(output, run('region', '--p', '0.5', '--samples', '200', '--n-theta', '64', '--format', 'svg')[1])

    def test_json(self):
        code, output = run('region', '--p', '0.5', '--what', 'hankel', '--samples', '50', '--format', 'json')
        data = json.loads(output)
        self.assertEqual(set(data), {'hankel'})
        self.assertEqual(data['hankel']['meta']['kind'], 'hankel')
        self.assertEqual(len(data['hankel']['points'][0]), 2)

    def test_too_few_angles(self):
        code, _ = run('region', '--what', 'omega', '--n-theta', '8')
        self.assertEqual(code, 2)


class VerifyCommandTests(unittest.TestCase):
    def test_byte_identical(self):
        first = run('verify', '--p', '0.5', '--samples', '4', '--seed', '2')
        second = run('verify', '--p', '0.5', '--samples', '4', '--seed', '2')
        self.assertEqual(first, second)
        self.assertEqual(first[0], 0)
        data = json.loads(first[1])
        self.assertTrue(all(family['pass'] for family in data['families']))


class ExtremalCommandTests(unittest.TestCase):
    def test_deterministic_and_bounded(self):
        argv = ('extremal', '--p', '0.4', '--grid', '8', '--iters', '20')
        code, output = run(*argv)
        self.assertEqual(code, 0)
        self.assertEqual(output, run(*argv)[1])
        data = json.loads(output)
        self.assertLessEqual(data['lower'], data['m_estimate'])
        self.assertLessEqual(data['m_estimate'], data['upper'] + 1e-6)
        self.assertEqual(len(data['arg_sigma']['arguments']), 3)

    def test_unwritable_output(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'missing', 'report.json')
            code, _ = run('extremal', '--p', '0.4', '--grid', '8', '--iters', '0', '--out', path)
        self.assertEqual(code, EXIT_IO)
