#!/usr/bin/env python3
"""
Run all Python tests for gizatullin.

Usage:
    python run_python_tests.py                 # Run all tests
    python run_python_tests.py -v              # Run with verbose output
    python run_python_tests.py -k toric        # Run tests matching 'toric'
    python run_python_tests.py --max-blowups 6 # Lower the sweep bound
    python run_python_tests.py --stress        # Also run the stress script
"""

import sys
import os
import subprocess
import argparse


def main():
    parser = argparse.ArgumentParser(description='Run gizatullin Python tests')
    parser.add_argument('-v', '--verbose', action='store_true', help='Verbose output')
    parser.add_argument('-k', '--keyword', type=str, help='Run tests matching keyword')
    parser.add_argument('--failfast', action='store_true', help='Stop on first failure')
    parser.add_argument('--max-blowups', type=int, help='Export GIZCTL_MAX_BLOWUPS for the run')
    parser.add_argument('--stress', action='store_true', help='Run stress_test.py after pytest')
    args = parser.parse_args()

    script_dir = os.path.dirname(os.path.abspath(__file__))
    test_dir = os.path.join(script_dir, 'python')

    # Change to project root so imports work
    project_root = os.path.dirname(script_dir)
    os.chdir(project_root)

    env = dict(os.environ)
    if args.max_blowups is not None:
        env['GIZCTL_MAX_BLOWUPS'] = str(args.max_blowups)

    cmd = [sys.executable, '-m', 'pytest', test_dir]

    if args.verbose:
        cmd.append('-v')

    if args.keyword:
        cmd.extend(['-k', args.keyword])

    if args.failfast:
        cmd.append('-x')

    cmd.append('--color=yes')

    print(f"Running: {' '.join(cmd)}")
    print("=" * 60)

    result = subprocess.run(cmd, env=env)
    if result.returncode != 0 or not args.stress:
        sys.exit(result.returncode)

    stress = [sys.executable, os.path.join(test_dir, 'stress_test.py')]
    print(f"Running: {' '.join(stress)}")
    print("=" * 60)
    sys.exit(subprocess.run(stress, env=env).returncode)


if __name__ == '__main__':
    main()
