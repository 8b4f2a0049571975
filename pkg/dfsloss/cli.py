"""
Command line interface of dfsloss.

Every subcommand prints one JSON report (sorted keys, floats with 15
significant digits) to stdout and optionally writes it to --output.

Usage:

dfsloss multiplicity --n 4
dfsloss verify recovery --trials 100 --threads 4
dfsloss qkd --rounds 100000 --noise on --loss 0.5 --output report.json
dfsloss photonic-table

Exit codes: 0 success, 1 failed verification, 2 invalid arguments.
"""
import argparse
import itertools
import json
import logging
import math
import numpy as np
import pandas as pd
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

# local imports
from dfsloss import exceptions
from dfsloss.dfs import (LogicalAmplitudes, balanced_support_check, dfs_basis, multiplicity, multiplicity_table,
                         random_dfs_state, verify_invariance)
from dfsloss.helpers import EXACT_TOL, make_rng, validate_positive_int_param
from dfsloss.logger import log
from dfsloss.lossrec import (branch_decompose, cnot_decomposition_check, default_two_loss_inputs, lose_particle,
                             post_loss_invariance, recover_channel, recover_four_qubit, two_loss_counterexample,
                             verify_branch_cycle, verify_branch_property)
from dfsloss.photonic import Outcome, measure_abstract, measure_fock, photonic_table
from dfsloss.qcore import inner
from dfsloss.qkd import ChannelConfig, conditional_exclusion_table, pair_counts, run_protocol, uu_random_check

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SUITES = ('invariance', 'branch', 'recovery', 'two-loss', 'photonic')
# errors caused by the arguments (exit code 2)
USAGE_ERRORS = (ValueError, TypeError, OSError, exceptions.DimensionMismatchException,
                exceptions.InvalidSitesException, exceptions.StateTooLargeException,
                exceptions.NoDecoherenceFreeSubspaceException, exceptions.InvalidPairingException)


# # Reports

# +
def _serializable(value: Any) -> Any:
    """Converts numpy and complex values, rounds floats to 15 significant digits."""
    if isinstance(value, dict):
        return {str(k): _serializable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_serializable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {'re': _serializable(value.real), 'im': _serializable(value.imag)}
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return None
        return float(f'{value:.15g}')
    return value


@dataclass
class RunReport:
    """
    Result of one subcommand. `elapsed` (seconds) is logged but not serialized
    so that two runs with the same arguments give identical reports.
    """
    command: str
    parameters: Dict[str, Any]
    results: Dict[str, Any]
    passed: Optional[bool] = None
    elapsed: float = field(default=0.0, compare=False)

    def to_dict(self) -> Dict[str, Any]:
        return _serializable({'command': self.command, 'parameters': self.parameters, 'results': self.results,
                              'pass': self.passed})

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @property
    def exit_code(self) -> int:
        return EXIT_FAIL if self.passed is False else EXIT_PASS


def write_report(report: RunReport, path: str) -> None:
    Path(path).write_text(report.to_json() + '\n', encoding='utf-8')


def _format_j(j) -> str:
    two_j = int(Fraction(j) * 2)
    return str(two_j // 2) if two_j % 2 == 0 else f'{two_j}/2'


# -

# # Commands

# +
def cmd_multiplicity(n: int, j=None) -> RunReport:
    """
    Examples
    --------
    >>> cmd_multiplicity(4).results['table']
    {'0': 2, '1': 3, '2': 1}
    """
    table = multiplicity_table(n)
    if j is not None:
        value = multiplicity(n, j)
        return RunReport(command='multiplicity', parameters={'n': n, 'j': _format_j(j)},
                         results={'multiplicity': value}, passed=None)
    completeness = table.completeness()
    results = {'table': {_format_j(two_j / 2): k for two_j, k in table.entries.items()},
               'completeness': completeness, 'expected': 2 ** n}
    return RunReport(command='multiplicity', parameters={'n': n}, results=results, passed=completeness == 2 ** n)


def _suite_invariance(n: int, d: int, trials: int, seed: int, tol: float) -> Dict[str, Any]:
    basis = dfs_basis(n, d)
    rng = make_rng(seed)
    deviations = [verify_invariance(s, trials=trials, seed=rng, tol=tol).max_deviation for s in basis.states]
    superposition = verify_invariance(random_dfs_state(n, d, rng), trials=trials, seed=rng, tol=tol)
    balanced = all(balanced_support_check(s) for s in basis.states)
    results = {'dimension': len(basis), 'max_deviation': max(deviations),
               'superposition_deviation': superposition.max_deviation, 'balanced_support': balanced}
    passed = max(deviations) < tol and superposition.passed and balanced
    if d == 2:
        results['multiplicity_j0'] = multiplicity(n, 0)
        passed = passed and len(basis) == results['multiplicity_j0']
    return {'results': results, 'pass': passed}


def _suite_branch(n: int, d: int, trials: int, seed: int, tol: float) -> Dict[str, Any]:
    states = dfs_basis(n, d).states
    property_deviation = 0.0
    cycle_deviation = 0.0
    for site in range(1, n + 1):
        for phi, psi in itertools.product(states, repeat=2):
            m = verify_branch_property(phi, psi, site)
            property_deviation = max(property_deviation, float(np.max(np.abs(m - inner(phi, psi) * np.eye(d)))))
        for psi in states:
            cycle_deviation = max(cycle_deviation, verify_branch_cycle(psi, site, tol=tol).max_deviation)
    rng = make_rng(seed)
    psi = random_dfs_state(n, d, rng)
    post_loss = max(post_loss_invariance(psi, site, trials=trials, seed=rng, tol=tol).max_deviation
                    for site in range(1, n + 1))
    results = {'branch_property_deviation': property_deviation, 'branch_cycle_deviation': cycle_deviation,
               'post_loss_deviation': post_loss}
    return {'results': results, 'pass': max(property_deviation, cycle_deviation, post_loss) < tol}


def _thread_map(func: Callable[[Any], Any], items: Sequence[Any], threads: int) -> List[Any]:
    """`map` over a pool of `threads` threads, results in the order of `items`."""
    validate_positive_int_param(threads, name='threads')
    if threads == 1 or len(items) < 2:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as executor:
        return list(executor.map(func, items))


def _suite_recovery(trials: int, seed: int, tol: float, threads: int = 1) -> Dict[str, Any]:
    rng = make_rng(seed)
    states = [LogicalAmplitudes.random(rng).encode() for _ in range(trials)]

    def fidelities(psi):
        channel = [recover_channel(lose_particle(psi, site), psi, site).total_fidelity for site in range(1, 5)]
        branch = [recover_four_qubit(b, psi, site).fidelity_with_original
                  for site in range(1, 5) for b in branch_decompose(psi, site).branches]
        return channel, branch

    results_per_state = _thread_map(fidelities, states, threads)
    channel_fidelities = [f for channel, _branch in results_per_state for f in channel]
    branch_fidelities = [f for _channel, branch in results_per_state for f in branch]
    cnot_ok = cnot_decomposition_check()
    results = {'min_channel_fidelity': min(channel_fidelities), 'min_branch_fidelity': min(branch_fidelities),
               'cnot_decomposition': cnot_ok}
    passed = min(channel_fidelities + branch_fidelities) >= 1 - tol and cnot_ok
    return {'results': results, 'pass': passed}


def _suite_two_loss(trials: int, seed: int) -> Dict[str, Any]:
    report = two_loss_counterexample(default_two_loss_inputs(count=trials, seed=seed))
    results = {'lost_sites': list(report.lost_sites), 'min_trace_distance': report.min_trace_distance,
               'singlet_weight_xi1': report.entries[0].singlet_weight,
               'singlet_weight_xi3': report.entries[1].singlet_weight, 'threshold': report.threshold}
    return {'results': results, 'pass': report.exhibited}


def _expected_outcomes(table: pd.DataFrame) -> pd.Series:
    return table['input'].map({'Xi': Outcome.XI.value, 'Xi_perp': Outcome.XI_PERP.value})


def _accuracy(table: pd.DataFrame) -> float:
    """Probability of the expected outcome, averaged over the rows' inputs."""
    right = table.loc[table['outcome'] == _expected_outcomes(table), 'probability'].sum()
    return float(right / table['probability'].sum())


def _suite_photonic(trials: int, seed: int, tol: float, threads: int = 1) -> Dict[str, Any]:
    table = photonic_table()
    beam_splitter = table[table['scheme'] == 'beam_splitter']
    individual = table[table['scheme'] == 'individual']
    no_loss = individual['lost_photon'].isna()
    rng = make_rng(seed)
    draws = []
    for _ in range(trials):
        psi = random_dfs_state(4, 2, rng)
        draws.append((psi, int(rng.integers(1, 4))))

    def max_difference(draw):
        psi, basis = draw
        difference = 0.0
        for lost_site in (None, 1, 2, 3, 4):
            fock = measure_fock(psi, basis=basis, lost_site=lost_site)
            abstract = measure_abstract(psi, basis=basis, lost_site=lost_site)
            difference = max(difference, max(abs(fock[o] - abstract[o]) for o in Outcome))
        return difference

    agreement = max(_thread_map(max_difference, draws, threads), default=0.0)
    uu = uu_random_check(rounds=trials, seed=seed)
    results = {'classification_accuracy': _accuracy(beam_splitter), 'backend_max_difference': agreement,
               'uu_xi_fraction': uu.fractions[Outcome.XI.value],
               'individual_accuracy': _accuracy(individual[no_loss]),
               'individual_accuracy_after_loss': _accuracy(individual[~no_loss])}
    passed = (abs(results['classification_accuracy'] - 1) < tol and abs(results['individual_accuracy'] - 1) < tol
              and agreement < tol and uu.passed)
    return {'results': results, 'pass': passed}


def cmd_verify(suite: str, n: int = 4, d: int = 2, trials: int = 100, seed: int = 0,
               tol: float = EXACT_TOL, threads: int = 1) -> RunReport:
    """
    Runs one verification suite, or all of them with `suite='all'`.
    `n` and `d` apply to the invariance and branch suites, the other suites
    work on four qubits. The recovery and photonic suites spread their
    sampled states over `threads` threads, which does not change the report.
    """
    if suite not in SUITES + ('all',):
        raise ValueError(f'suite must be one of {SUITES + ("all",)}. Got {suite}')
    validate_positive_int_param(threads, name='threads')
    runners: Dict[str, Callable[[], Dict[str, Any]]] = {
        'invariance': lambda: _suite_invariance(n, d, trials, seed, tol),
        'branch': lambda: _suite_branch(n, d, trials, seed, tol),
        'recovery': lambda: _suite_recovery(trials, seed, tol, threads),
        'two-loss': lambda: _suite_two_loss(trials, seed),
        'photonic': lambda: _suite_photonic(trials, seed, tol, threads)}
    selected = SUITES if suite == 'all' else (suite,)
    outcomes = {}
    for name in selected:
        outcomes[name] = runners[name]()
        level = logging.INFO if outcomes[name]['pass'] else logging.WARNING
        log(f'suite {name}: {"pass" if outcomes[name]["pass"] else "FAIL"}', level=level)
    parameters = {'suite': suite, 'n': n, 'd': d, 'trials': trials, 'seed': seed, 'tol': tol}
    results = outcomes[suite]['results'] if suite != 'all' else outcomes
    return RunReport(command='verify', parameters=parameters, results=results,
                     passed=all(o['pass'] for o in outcomes.values()))


def _table_to_dict(table) -> Dict[str, Dict[str, Any]]:
    return {str(row): {str(col): table.loc[row, col] for col in table.columns} for row in table.index}


def cmd_qkd(rounds: int, loss: float = 0.0, noise: bool = False, backend: str = 'abstract', seed: int = 0,
            threads: int = 1, output_path: Optional[str] = None) -> RunReport:
    """
    Runs the protocol. With `output_path` the report is written there and the
    empirical exclusion table next to it with the suffix .csv.
    """
    if backend not in ('abstract', 'fock'):
        raise ValueError(f"backend must be 'abstract' or 'fock'. Got {backend}")
    channel = ChannelConfig(collective_noise=noise, loss_probability=loss, seed=seed)
    stats = run_protocol(rounds, channel, use_fock_backend=backend == 'fock', threads=threads)
    empirical = conditional_exclusion_table(stats)
    exact = conditional_exclusion_table(stats, exact=True)
    diagonal = [exact.loc[k, k] for k in exact.index if not np.isnan(exact.loc[k, k])]
    results = {'stats': stats.to_dict(), 'exclusion_table': _table_to_dict(empirical),
               'exact_exclusion_table': _table_to_dict(exact), 'pair_counts': _table_to_dict(pair_counts(stats))}
    parameters = {'rounds': rounds, 'loss': loss, 'noise': 'on' if noise else 'off', 'backend': backend,
                  'seed': seed}
    report = RunReport(command='qkd', parameters=parameters, results=results,
                       passed=all(value < EXACT_TOL for value in diagonal))
    if output_path is not None:
        write_report(report, output_path)
        empirical.to_csv(Path(output_path).with_suffix('.csv'))
    return report


def cmd_photonic_table(convention: str = 'real') -> RunReport:
    """
    Passes when the beam splitters identify every input, with or without a
    loss, and the individual photon measurement does so without loss.
    """
    table = photonic_table(convention=convention)
    beam_splitter = table['scheme'] == 'beam_splitter'
    required = beam_splitter | table['lost_photon'].isna()
    correct = table['outcome'] == _expected_outcomes(table)
    rows = table.astype(object).where(table.notna(), None).to_dict(orient='records')
    return RunReport(command='photonic-table', parameters={'convention': convention}, results={'rows': rows},
                     passed=bool(correct[required].all()))


# -

# # Entry point

# +
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='dfsloss', description='Decoherence-free subspaces and particle loss')
    subparsers = parser.add_subparsers(dest='command', required=True)

    p = subparsers.add_parser('multiplicity', help='spin multiplicities of n qubits')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--j', type=Fraction, default=None, help='spin, e.g. 0, 1/2 or 1.5')

    p = subparsers.add_parser('verify', help='run a verification suite')
    p.add_argument('suite', choices=SUITES + ('all',))
    p.add_argument('--n', type=int, default=4)
    p.add_argument('--d', type=int, default=2)
    p.add_argument('--trials', type=int, default=100)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--tol', type=float, default=EXACT_TOL)
    p.add_argument('--threads', type=int, default=1)

    p = subparsers.add_parser('qkd', help='simulate the key distribution rounds')
    p.add_argument('--rounds', type=int, default=10_000)
    p.add_argument('--loss', type=float, default=0.0)
    p.add_argument('--noise', choices=('on', 'off'), default='off')
    p.add_argument('--backend', choices=('abstract', 'fock'), default='abstract')
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--threads', type=int, default=1)

    p = subparsers.add_parser('photonic-table', help='count distributions of the beam splitter measurement')
    p.add_argument('--convention', choices=('real', 'symmetric'), default='real')

    for p in subparsers.choices.values():
        p.add_argument('--output', default=None, help='also write the report to this file')
    return parser


def run(args: argparse.Namespace) -> RunReport:
    if args.command == 'multiplicity':
        return cmd_multiplicity(args.n, args.j)
    if args.command == 'verify':
        return cmd_verify(args.suite, n=args.n, d=args.d, trials=args.trials, seed=args.seed, tol=args.tol,
                          threads=args.threads)
    if args.command == 'qkd':
        return cmd_qkd(args.rounds, loss=args.loss, noise=args.noise == 'on', backend=args.backend, seed=args.seed,
                       threads=args.threads, output_path=args.output)
    return cmd_photonic_table(convention=args.convention)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        report = run(args)
        if args.output is not None and args.command != 'qkd':
            write_report(report, args.output)
    except USAGE_ERRORS as e:
        log(f'{type(e).__name__}: {e}', level=logging.ERROR)
        return EXIT_USAGE
    report.elapsed = time.perf_counter() - start
    log(f'{args.command} done in {report.elapsed:.3f}s')
    print(report.to_json())
    return report.exit_code


if __name__ == '__main__':
    sys.exit(main())
