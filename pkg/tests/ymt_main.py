"""Unit tests for the command line entry point."""
import io
import json
import os
import shutil
import sys
import tempfile
import unittest

from ymt.__main__ import EXIT_FAILED, EXIT_INPUT, EXIT_OK, EXIT_USAGE, main
from ymt.verbosity import Verbosity, log

SMALL = dict(lattice=dict(extents=[2, 2]), extension=dict(seeds=2))

SKEWED = dict(lattice=dict(extents=[2, 2]), extension=dict(seeds=2),
              pairing=dict(kind='matrix', matrix=[[1.0, 0.5, 0.0],
                                                  [0.5, 2.0, 0.0],
                                                  [0.0, 0.0, 3.0]]))


class MainUnitTest(unittest.TestCase):
    """Test cases for running the ymt command."""

    def setUp(self):
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def scenario(self, config, name='scenario.json'):
        path = os.path.join(self.directory, name)

        with open(path, 'w') as f:
            json.dump(config, f)

        return path

    def run_main(self, argv):
        """Run the command and capture what it prints to stdout.

        Returns: the exit status and the captured output.
        """
        out = io.StringIO()
        f = open(os.devnull, 'w')

        try:
            sys.stdout = out
            sys.stderr = f

            status = main(argv)
        finally:
            sys.stderr = sys.__stderr__
            sys.stdout = sys.__stdout__
            f.close()
            log.verbosity = Verbosity.SILENT

        return status, out.getvalue()

    def test_artifact(self):
        """Test that JSON artifacts carry the version, command and seed."""
        status, output = self.run_main(['rank', 'bound', '--n', '4',
                                        '--l', '3'])
        artifact = json.loads(output)

        self.assertEqual(EXIT_OK, status)
        self.assertEqual('ymt rank bound --n 4 --l 3', artifact['command'])
        self.assertEqual(42, artifact['seed'])
        self.assertIn('version', artifact)
        self.assertIn('bound', artifact['result'])

    def test_csv(self):
        """Test the CSV table of low rank pairs."""
        status, output = self.run_main(['--format', 'csv', 'rank',
                                        'enumerate', '--z', '40',
                                        '--max-n', '6', '--max-l', '6'])
        lines = output.splitlines()

        self.assertEqual(EXIT_OK, status)
        self.assertTrue(lines[0].startswith('# version: '))
        self.assertTrue(lines[1].startswith('# command: ymt --format csv'))
        self.assertEqual('# seed: 42', lines[2])
        self.assertEqual('n,l,rank_bound', lines[3])

        for line in lines[4:]:
            n, l, bound = (int(v) for v in line.split(','))

            self.assertTrue(2 <= n <= 6 and 1 <= l <= 6)
            self.assertLessEqual(bound, 40)

    def test_csv_low_rank_pairs(self):
        """Test the rank 7 table: only (2, 1) and (2, 2) qualify."""
        status, output = self.run_main(['--format', 'csv', 'rank',
                                        'enumerate', '--z', '7',
                                        '--max-n', '12', '--max-l', '12'])

        self.assertEqual(EXIT_OK, status)
        self.assertEqual(['n,l,rank_bound', '2,1,2', '2,2,5'],
                         output.splitlines()[3:])

    def test_csv_needs_table(self):
        """Test that results without rows cannot be written as CSV."""
        status, output = self.run_main(['--format', 'csv', 'action', 'eval'])

        self.assertEqual(EXIT_INPUT, status)
        self.assertEqual('', output)

    def test_deterministic(self):
        """Test that the same command gives the same artifact."""
        first = self.run_main(['action', 'eval'])
        second = self.run_main(['action', 'eval'])

        self.assertEqual(EXIT_OK, first[0])
        self.assertEqual(first, second)

    def test_seed_override(self):
        """Test that --seed overrides the scenario seed before or after the
        command.
        """
        default = json.loads(self.run_main(['action', 'eval'])[1])
        before = json.loads(self.run_main(['--seed', '7', 'action',
                                           'eval'])[1])
        after = json.loads(self.run_main(['action', 'eval', '--seed',
                                          '7'])[1])
        debug = json.loads(self.run_main(['--seed', '7', 'action', 'eval',
                                          '--debug'])[1])

        self.assertEqual(7, before['seed'])
        self.assertEqual(before['result'], after['result'])
        self.assertNotEqual(default['result']['value'],
                            before['result']['value'])
        self.assertEqual(default['result'], debug['result'])

    def test_abelian_demo(self):
        """Test that the u(1) demo has the roots 0 and 1."""
        for argv in (['scalar-poly', '--abelian-demo'],
                     ['ext', 'scalar-poly', '--abelian-demo']):
            status, output = self.run_main(argv)
            roots = json.loads(output)['result']['roots']

            self.assertEqual(EXIT_OK, status)
            self.assertEqual(2, len(roots))
            self.assertAlmostEqual(0.0, min(roots), places=9)
            self.assertAlmostEqual(1.0, max(roots), places=9)

    def test_usage_errors(self):
        """Test that malformed command lines exit with status 64."""
        for argv in (['rank', 'bound', '--n', '4'], ['colour'],
                     ['rank', 'bound', '--n', 'four', '--l', '3'], []):
            f = open(os.devnull, 'w')

            try:
                sys.stderr = f

                with self.assertRaises(SystemExit) as context:
                    main(argv)
            finally:
                sys.stderr = sys.__stderr__
                f.close()

            self.assertEqual(EXIT_USAGE, context.exception.code)

    def test_input_errors(self):
        """Test that bad inputs exit with status 2."""
        bad = self.scenario(dict(colour='red'), 'bad.json')

        for argv in (['--config', os.path.join(self.directory, 'no.json'),
                      'action', 'eval'],
                     ['--config', bad, 'action', 'eval'],
                     ['ext', 'check'],
                     ['ext', 'check', '--in', bad]):
            self.assertEqual(EXIT_INPUT, self.run_main(argv)[0])

    def test_failures(self):
        """Test that failed checks and preconditions exit with status 3."""
        skewed = self.scenario(SKEWED)

        status, output = self.run_main(['--config', skewed, 'action',
                                        'gauge-check', '--trials', '4'])

        self.assertEqual(EXIT_FAILED, status)
        self.assertFalse(json.loads(output)['result']['invariant'])

        status, _ = self.run_main(['--config', skewed, 'ext',
                                   'make-identity'])

        self.assertEqual(EXIT_FAILED, status)

    def test_gauge_check(self):
        """Test that the Killing pairing passes the gauge check."""
        path = self.scenario(SMALL)
        status, output = self.run_main(['--config', path, 'action',
                                        'gauge-check', '--trials', '4'])

        self.assertEqual(EXIT_OK, status)
        self.assertTrue(json.loads(output)['result']['invariant'])

    def test_extension_files(self):
        """Test that an extension written to file can be read back, checked
        and added to itself.
        """
        path = self.scenario(SMALL)
        out = os.path.join(self.directory, 'constant.json')
        status, output = self.run_main(['--config', path, 'ext',
                                        'make-constant', '--out', out])

        self.assertEqual(EXIT_OK, status)
        self.assertEqual('', output)
        self.assertTrue(os.path.isfile(out))

        for argv in (['ext', 'check', '--in', out],
                     ['ext', 'sum', '--in', out, '--in', out],
                     ['ext', 'act', '--in', out],
                     ['ext', 'module', '--in', out, '--coefficients',
                      '0:1,1:-1/2'],
                     ['ext', 'restrict', '--in', out]):
            status, output = self.run_main(['--config', path] + argv)

            self.assertEqual(EXIT_OK, status, argv)
            self.assertTrue(json.loads(output)['result']['ok'])

    def test_terminal(self):
        """Test that the null extension is terminal on a small scenario."""
        path = self.scenario(SMALL)
        status, output = self.run_main(['--config', path, 'cat', 'terminal'])
        result = json.loads(output)['result']

        self.assertEqual(EXIT_OK, status)
        self.assertTrue(result['terminal'])
        self.assertEqual([1, 1, 0], [w['count'] for w in result['witnesses']])

    def test_bf_iso(self):
        """Test the identity to BF isomorphism on a 2^4 lattice, and that
        the morphism file can be classified and inverted.
        """
        path = self.scenario(dict(extension=dict(seeds=2)))
        out = os.path.join(self.directory, 'iso.json')
        status, _ = self.run_main(['--config', path, 'cat', 'bf-iso',
                                   '--out', out])

        self.assertEqual(EXIT_OK, status)

        status, output = self.run_main(['--config', path, 'cat', 'classify',
                                        '--in', out])

        self.assertEqual(EXIT_OK, status)
        self.assertTrue(json.loads(output)['result']['classify']['iso'])

        status, _ = self.run_main(['--config', path, 'cat', 'inverse',
                                   '--in', out])

        self.assertEqual(EXIT_OK, status)


if __name__ == '__main__':
    unittest.main()
