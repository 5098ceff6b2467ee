# -*- coding: utf-8 -*-
"""
Command line front-end.
===================================================
    qautomata eval FILE [WORD ...]
    qautomata enumerate FILE [--maxlen L]
    qautomata zero FILE [--method det|sz|sz-cex|isolation]
    qautomata equiv LEFT RIGHT [--method det|sz|sz-cex|isolation]
    qautomata minimal FILE
    qautomata minimize FILE [--method det|randomized] [--output PATH]
    qautomata pra-equiv LEFT RIGHT [--mode expectation|distribution]
    qautomata vpa-equiv LEFT RIGHT [--levels L]
    qautomata acit LEFT RIGHT

Exit codes: 0 equivalent / zero / minimal (also "probably"), 1 inequivalent /
non-zero / not minimal, 2 usage or input error.
Defaults come from templates/defaults.yml, overridden by --yaml_file and
then by explicit flags.
"""
import os
import sys
import time
import argparse
from fractions import Fraction

from .circuits import acit_equal, circuit_eval_exact, parse_circuit
from .errors import BudgetExceededError, QAutomataError
from .formats import parse, render
from .logger import Logger
from .minimize import is_minimal, minimize
from .pra import PRA, distribution_equivalent, expectation_equivalent, expected_reward_oracle, first_moment_automaton
from .random_source import RandomSource
from .randomized import equivalent_randomized, zero_isolation, zero_sz, zero_sz_cex
from .report import Report
from .trials import TrialRunner
from .utils import check_folder, load_parameters, save_yaml
from .vpa import WVPA, vpa_equivalent, vpa_evaluate
from .wfa import WFA, Verdict, all_words, count_words, enumerate_oracle, equivalent_det, evaluate, is_zero_det

RANDOMIZED = ('sz', 'sz-cex', 'isolation')
TRIAL_KEYS = {
    'zero': 'sz_trials', 'equiv': 'sz_trials', 'pra-equiv': 'pra_trials',
    'vpa-equiv': 'vpa_trials', 'acit': 'acit_trials',
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=None, help='Seed of the random source.')
    common.add_argument('--k', type=int, default=None, help='Schwartz-Zippel range factor K.')
    common.add_argument('--trials', type=int, default=None, help='Number of independent trials.')
    common.add_argument('--json', action='store_true', help='Print the report as JSON.')
    common.add_argument('--yaml_file', type=str, default=None, help='Parameter file overriding the defaults.')
    common.add_argument('--log_file', type=str, default=None, help='Append log lines to this file.')
    common.add_argument('--verbose', action='store_true', help='Mirror log lines on stderr.')
    common.add_argument('--timing', action='store_true', help='Report the elapsed time.')
    common.add_argument('--save_config', type=str, default=None, help='Write the effective parameters to this yaml file.')
    common.add_argument('--require-deterministic', dest='require_deterministic', action='store_true',
                        help='Use the deterministic method wherever one exists.')

    parser = argparse.ArgumentParser(prog='qautomata', description='Exact decision procedures for rational weighted automata.')
    commands = parser.add_subparsers(dest='command', required=True)

    evaluate_parser = commands.add_parser('eval', parents=[common], help='Value of a word.')
    evaluate_parser.add_argument('file')
    evaluate_parser.add_argument('word', nargs='*')

    enumerate_parser = commands.add_parser('enumerate', parents=[common], help='Values of every short word.')
    enumerate_parser.add_argument('file')
    enumerate_parser.add_argument('--maxlen', type=int, default=3, help='Longest enumerated word.')


    zero_parser = commands.add_parser('zero', parents=[common], help='Zeroness of a weighted automaton.')
    zero_parser.add_argument('file')
    zero_parser.add_argument('--method', choices=('det',) + RANDOMIZED, default='det')

    equiv_parser = commands.add_parser('equiv', parents=[common], help='Equivalence of two weighted automata.')
    equiv_parser.add_argument('left')
    equiv_parser.add_argument('right')
    equiv_parser.add_argument('--method', choices=('det',) + RANDOMIZED, default='det')

    minimal_parser = commands.add_parser('minimal', parents=[common], help='Minimality test.')
    minimal_parser.add_argument('file')

    minimize_parser = commands.add_parser('minimize', parents=[common], help='Minimal equivalent automaton.')
    minimize_parser.add_argument('file')
    minimize_parser.add_argument('--method', choices=('det', 'randomized'), default='det')
    minimize_parser.add_argument('--output', type=str, default=None, help='Write the minimal automaton here.')

    pra_parser = commands.add_parser('pra-equiv', parents=[common], help='Equivalence of reward automata.')
    pra_parser.add_argument('left')
    pra_parser.add_argument('right')
    pra_parser.add_argument('--mode', choices=('expectation', 'distribution'), default='expectation')
    pra_parser.add_argument('--method', choices=('det',) + RANDOMIZED, default='det')

    vpa_parser = commands.add_parser('vpa-equiv', parents=[common], help='Equivalence of pushdown automata.')
    vpa_parser.add_argument('left')
    vpa_parser.add_argument('right')
    vpa_parser.add_argument('--levels', type=int, default=None, help='Level of the word sums (default n squared).')

    acit_parser = commands.add_parser('acit', parents=[common], help='Equality of two arithmetic circuits.')
    acit_parser.add_argument('left')
    acit_parser.add_argument('right')
    return parser


def _load(path, expected, command):
    automaton = parse(path)
    if not isinstance(automaton, expected):
        raise QAutomataError('`{}` expects {} files, {} is not one'.format(command, expected.__name__, path))
    return automaton


def _equivalence_report(command, result, alphabet, parameters, method):
    if result.verdict == Verdict.INEQUIVALENT:
        witness = result.witness
        return Report(command, result.verdict.value, 1, parameters['seed'], method, alphabet.decode(witness.word),
                      [witness.value_left, witness.value_right], details=result.details)
    return Report(command, result.verdict.value, 0, parameters['seed'], method, confidence=result.confidence,
                  details=result.details)


def _method(args):
    return 'det' if args.require_deterministic else args.method


def _assignment(values):
    try:
        return {index: int(value) for index, value in enumerate(values)}
    except ValueError:
        raise QAutomataError('circuit inputs must be integers, got {}'.format(' '.join(values)))


def command_eval(args, parameters, rng, logger):
    if args.file.endswith('.circ'):
        with open(args.file, 'r') as stream:
            circuit = parse_circuit(stream.read())
        value = circuit_eval_exact(circuit, _assignment(args.word), parameters['circuit_bit_budget'])
        return Report('eval', 'value', 0, values=[Fraction(value, circuit.denominator)])
    automaton = parse(args.file)

    if isinstance(automaton, WVPA):
        value = vpa_evaluate(automaton, automaton.alphabet.encode(args.word))
        return Report('eval', 'value', 0, values=[value])
    word = automaton.alphabet.encode(args.word)
    if isinstance(automaton, PRA):
        rewards = []
        for component in range(automaton.s):
            moment = first_moment_automaton(automaton, component)
            rewards.append(evaluate(moment, moment.alphabet.encode(args.word)))
        return Report('eval', 'expected_reward', 0, values=rewards)
    return Report('eval', 'value', 0, values=[evaluate(automaton, word)])


def command_enumerate(args, parameters, rng, logger):
    automaton = parse(args.file)
    if isinstance(automaton, WVPA):
        raise QAutomataError('`enumerate` expects wfa or pra files, {} is neither'.format(args.file))
    if args.maxlen < 0:
        raise QAutomataError('--maxlen must be non-negative')
    if isinstance(automaton, PRA):
        total = count_words(len(automaton.alphabet), args.maxlen)
        if total > parameters['enumeration_budget']:
            raise BudgetExceededError('{} words exceed the enumeration budget {}'.format(
                total, parameters['enumeration_budget']))
        rows = [(word, expected_reward_oracle(automaton, word, parameters['path_budget']))
                for word in all_words(automaton.alphabet, args.maxlen)]
        verdict = 'expected_rewards'
    else:
        rows = [(word, [value]) for word, value in
                enumerate_oracle(automaton, args.maxlen, parameters['enumeration_budget'])]
        verdict = 'values'
    words = [[automaton.alphabet.decode(word), values] for word, values in rows]
    return Report('enumerate', verdict, 0, details={'maxlen': args.maxlen, 'words': words})


def command_zero(args, parameters, rng, logger):

    automaton = _load(args.file, WFA, 'zero')
    method = _method(args)
    if method == 'det':
        word = is_zero_det(automaton)
        if word is None:
            return Report('zero', 'zero', 0, method=method)
        return Report('zero', 'nonzero', 1, method=method, witness=automaton.alphabet.decode(word),
                      values=[evaluate(automaton, word)])
    trials = parameters['sz_trials'] if method != 'isolation' else parameters['isolation_trials']
    if method == 'sz':
        result = zero_sz(automaton, parameters['k_param'], rng, trials)
    elif method == 'sz-cex':
        result = zero_sz_cex(automaton, parameters['k_param'], rng, trials)
    else:
        result = zero_isolation(automaton, trials, rng, parameters['isolation_retries'], logger)
    details = dict(result.details)
    if result.nonzero:
        if result.length is not None:
            details['length'] = result.length
        witness = None if result.witness is None else automaton.alphabet.decode(result.witness)
        values = None if result.value is None else [result.value]
        return Report('zero', 'nonzero', 1, parameters['seed'], method, witness, values, details=details)
    return Report('zero', 'probably_zero', 0, parameters['seed'], method, confidence=result.confidence, details=details)


def command_equiv(args, parameters, rng, logger):
    left, right = _load(args.left, WFA, 'equiv'), _load(args.right, WFA, 'equiv')
    method = _method(args)
    if method == 'det':
        result = equivalent_det(left, right)
    else:
        trials = parameters['sz_trials'] if method != 'isolation' else parameters['isolation_trials']
        result = equivalent_randomized(left, right, method, parameters['k_param'], trials, rng,
                                       parameters['isolation_retries'], logger)
    seedless = dict(parameters, seed=None) if method == 'det' else parameters
    return _equivalence_report('equiv', result, left.alphabet, seedless, method)


def command_minimal(args, parameters, rng, logger):
    automaton = _load(args.file, WFA, 'minimal')
    if is_minimal(automaton):
        return Report('minimal', 'minimal', 0, details={'states': automaton.n})
    return Report('minimal', 'not_minimal', 1, details={'states': automaton.n})


def command_minimize(args, parameters, rng, logger):
    automaton = _load(args.file, WFA, 'minimize')
    randomized = args.method == 'randomized' and not args.require_deterministic
    if randomized:
        k_param = args.k if args.k is not None else parameters['minimize_k_factor'] * max(1, automaton.n)
        result = minimize(automaton, 'randomized', k_param, rng, parameters['minimize_retries'], logger)
    else:
        result = minimize(automaton)
    details = {'states_before': automaton.n, 'states_after': result.n}
    text = render(result)
    if args.output:
        check_folder(os.path.dirname(os.path.abspath(args.output)))
        with open(args.output, 'w') as stream:
            stream.write(text)
        details['output'] = args.output
    else:
        details['automaton'] = text
    return Report('minimize', 'minimized', 0, parameters['seed'] if randomized else None,
                  'randomized' if randomized else 'det', details=details)


def command_pra_equiv(args, parameters, rng, logger):
    left, right = _load(args.left, PRA, 'pra-equiv'), _load(args.right, PRA, 'pra-equiv')
    if args.mode == 'distribution':
        result = distribution_equivalent(left, right, parameters['pra_trials'], rng, parameters['pra_redraws'], logger)
        return _equivalence_report('pra-equiv', result, left.alphabet, parameters, 'distribution')
    method = _method(args)
    result = expectation_equivalent(left, right, method, parameters['k_param'], parameters['sz_trials'], rng,
                                    parameters['isolation_retries'], logger)
    seedless = dict(parameters, seed=None) if method == 'det' else parameters
    return _equivalence_report('pra-equiv', result, left.alphabet, seedless, method)


def _modular_report(command, result, parameters):
    details = dict(result.details, primes=list(result.primes))
    if result.verdict == Verdict.INEQUIVALENT:
        return Report(command, result.verdict.value, 1, parameters['seed'], 'modular', details=details)
    return Report(command, result.verdict.value, 0, parameters['seed'], 'modular', details=details)


def command_vpa_equiv(args, parameters, rng, logger):
    left, right = _load(args.left, WVPA, 'vpa-equiv'), _load(args.right, WVPA, 'vpa-equiv')
    runner = TrialRunner.from_parameters(parameters, name='primes')
    result = vpa_equivalent(left, right, parameters['vpa_trials'], rng, args.levels, runner,
                            parameters['prime_bits'], logger)
    return _modular_report('vpa-equiv', result, parameters)


def command_acit(args, parameters, rng, logger):
    circuits = []
    for path in (args.left, args.right):
        with open(path, 'r') as stream:
            circuits.append(parse_circuit(stream.read()))
    runner = TrialRunner.from_parameters(parameters, name='primes')
    result = acit_equal(circuits[0], circuits[1], parameters['acit_trials'], rng, runner, parameters['prime_bits'])
    return _modular_report('acit', result, parameters)


COMMANDS = {
    'eval': command_eval,
    'enumerate': command_enumerate,
    'zero': command_zero,
    'equiv': command_equiv,
    'minimal': command_minimal,
    'minimize': command_minimize,
    'pra-equiv': command_pra_equiv,
    'vpa-equiv': command_vpa_equiv,
    'acit': command_acit,
}


def run(argv=None, stdout=None, stderr=None):
    """Execute one command line.
    Arguments:
        - argv: list of str (defaults to sys.argv[1:])
        - stdout, stderr: text streams
    Returns:
        - (exit code, Report or None)
    """
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return (exit_.code if isinstance(exit_.code, int) else 2), None
    overrides = {'seed': args.seed, 'k_param': args.k, 'log_file': args.log_file}
    if args.trials is not None:
        key = TRIAL_KEYS.get(args.command)
        if key == 'sz_trials' and getattr(args, 'method', None) == 'isolation':
            key = 'isolation_trials'
        if key:
            overrides[key] = args.trials
    start = time.time()
    try:
        parameters = load_parameters(args.yaml_file, **overrides)
        logger = Logger(parameters['log_file'], verbose=args.verbose, stream=stderr)
        logger.report_state(parameters)
        logger.info('Running `{}`'.format(args.command))
        report = COMMANDS[args.command](args, parameters, RandomSource(parameters['seed']), logger)
        logger.validate()
        if args.save_config:
            save_yaml(parameters, args.save_config)
    except (QAutomataError, OSError) as error:
        stderr.write('error: {}\n'.format(error))
        return 2, None
    if args.timing:
        report.elapsed = time.time() - start
    stdout.write((report.to_json() if args.json else report.to_text()) + '\n')
    return report.exit_code, report


def main(argv=None):
    sys.exit(run(argv)[0])


if __name__ == '__main__':
    main()
