import argparse
import json
import logging
import sys
import typing

from condlgm._exceptions import CondLgmError
from condlgm._meta import __version__
from condlgm.cli._diagnose_run import diagnose_run
from condlgm.cli._run import exit_code, run
from condlgm.cli._run_config import parse_config
from condlgm.models._model_spec import MODEL_SPECS
from condlgm.models._simulate_dataset import simulate_dataset
from condlgm.samplers._sampler_config import METHODS


LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='condlgm',
        description='Bayesian inference for conditional latent Gaussian '
                    'models by importance sampling, adaptive multiple '
                    'importance sampling or Metropolis-Hastings.')
    parser.add_argument('--version', action='version', version=__version__)
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('--verbose', action='store_true',
                           help='log debug messages')
    verbosity.add_argument('--quiet', action='store_true',
                           help='log warnings and errors only')
    commands = parser.add_subparsers(dest='command', required=True)

    fit = commands.add_parser('fit', help='sample a model and write the '
                                          'posterior summaries')
    fit.add_argument('--model', choices=sorted(MODEL_SPECS))
    fit.add_argument('--method', choices=METHODS)
    fit.add_argument('--data', help='CSV file; the synthetic dataset is '
                                    'used when omitted')
    fit.add_argument('--config', help='key = value configuration file')
    fit.add_argument('--seed', type=int)
    fit.add_argument('--workers', type=int)
    fit.add_argument('--out', help='output directory')

    simulate = commands.add_parser('simulate', help='write a synthetic '
                                                    'dataset')
    simulate.add_argument('--model', choices=sorted(MODEL_SPECS),
                          required=True)
    simulate.add_argument('--seed', type=int, required=True)
    simulate.add_argument('--n', type=int)
    simulate.add_argument('--out', required=True, help='CSV file to write')

    diagnose = commands.add_parser('diagnose', help='recompute the '
                                                    'diagnostics of a run')
    diagnose.add_argument('--run', required=True, help='output directory of '
                                                       'a run')
    return parser


def main(argv: typing.Optional[typing.Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)

    try:
        if args.command == 'fit':
            config = parse_config(args.config, {
                'model': args.model,
                'method': args.method,
                'data': args.data,
                'seed': args.seed,
                'workers': args.workers,
                'out': args.out,
            })
            return run(config)
        if args.command == 'simulate':
            simulate_dataset(args.model, args.seed, args.n).write_csv(args.out)
            logger.info('Wrote the %s dataset to %s.', args.model, args.out)
            return 0
        report = diagnose_run(args.run)
        json.dump(report.to_dict(), sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write('\n')
        return 0
    except (CondLgmError, OSError) as err:
        logger.error('%s: %s', type(err).__name__, err)
        return exit_code(err)
