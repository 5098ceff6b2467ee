# -*- coding: utf-8 -*-
"""
Two reward automata whose total rewards share the law of Y - Z, with Y and
Z geometric, versus a copy where one loop flips its reward sign.
Expectation is compared exactly, the law by random substitution over many
seeds; per-seed verdicts are saved to a yaml file.
"""
import os
import argparse

from tqdm import tqdm

from qautomata.formats import parse
from qautomata.logger import Logger
from qautomata.pra import distribution_equivalent, expectation_equivalent, first_moment_automaton
from qautomata.random_source import RandomSource
from qautomata.utils import check_folder, format_rational, load_parameters, save_yaml
from qautomata.wfa import Verdict, evaluate

DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)), '..', 'tests', 'data')


def sweep(left, right, seeds, parameters, logger):
    verdicts = {}
    for seed in tqdm(range(seeds)):
        result = distribution_equivalent(left, right, parameters['pra_trials'], RandomSource(seed),
                                         parameters['pra_redraws'], logger)
        verdicts[seed] = result.verdict.value
    return verdicts


if __name__ == '__main__':

    parser = argparse.ArgumentParser(description="""Expectation and law of the geometric reward example.""")
    parser.add_argument("--yaml_file", type=str, default=None,
                        help="Path to a yaml overriding the default parameters.")
    parser.add_argument("--seeds", type=int, default=100, help="Number of seeds of the law comparison.")
    parser.add_argument("--output", type=str, default='derivatives/geometric/', help="Saving folder.")

    args = parser.parse_args()
    parameters = load_parameters(args.yaml_file)
    check_folder(args.output)
    logs = Logger(os.path.join(args.output, 'logs.txt'))
    save_yaml(parameters, os.path.join(args.output, 'config.yml'))
    logs.report_state(parameters)

    logs.info("Loading automata...")
    left = parse(os.path.join(DATA, 'geomB.pra'))
    right = parse(os.path.join(DATA, 'geomC.pra'))
    flipped = parse(os.path.join(DATA, 'geomC_flipped.pra'))
    logs.validate()

    summary = {}
    for name, automaton in (('left', left), ('right', right), ('flipped', flipped)):
        moment = first_moment_automaton(automaton, 0)
        summary['expected_reward_{}'.format(name)] = format_rational(evaluate(moment, ()))

    logs.info("Comparing expectations...")
    summary['expectation_same'] = expectation_equivalent(left, right).verdict.value
    summary['expectation_flipped'] = expectation_equivalent(left, flipped).verdict.value
    logs.validate()

    logs.info("Comparing laws over {} seeds...".format(args.seeds))
    for name, other in (('same', right), ('flipped', flipped)):
        verdicts = sweep(left, other, args.seeds, parameters, logs)
        summary['law_{}'.format(name)] = verdicts
        detected = sum(v == Verdict.INEQUIVALENT.value for v in verdicts.values())
        summary['law_{}_inequivalent'.format(name)] = detected
        print('{}: {}/{} seeds inequivalent'.format(name, detected, args.seeds))
    logs.validate()

    save_yaml(summary, os.path.join(args.output, 'results.yml'))
