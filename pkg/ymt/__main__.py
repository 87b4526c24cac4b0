import argparse
import shlex
import sys

import yappi

from ymt.errors import InputError, PreconditionError, VerificationError
from ymt.main import Workbench
from ymt.scenario import CONSTRUCTORS, Scenario
from ymt.verbosity import Verbosity, log

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_FAILED = 3
EXIT_USAGE = 64

DEBUG_SEED = 42


class ArgumentParser(argparse.ArgumentParser):
    """An argument parser that exits with the usage status 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, '%s: error: %s\n' % (self.prog, message))


def add_common(parser, suppress=False):
    """Add the flags every command accepts.

    Leaf commands add them with suppressed defaults so that a flag given
    before the command is not reset by the leaf.
    """
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument('--seed', type=int, default=default(None),
                        help='the seed of every random draw; overrides the '
                             'scenario seed.')
    parser.add_argument('--out', default=default(None),
                        help='where to write the artifact: a file, or a '
                             'directory ending in / for a run directory. '
                             'Printed to stdout by default.')
    parser.add_argument('--format', choices=['json', 'csv'],
                        default=default('json'),
                        help='the output format.')
    parser.add_argument('--config', default=default(None),
                        help='the scenario JSON file.')
    parser.add_argument('--verbose', action='store_true',
                        default=default(False),
                        help='print per item progress to stderr.')
    parser.add_argument('--quiet', action='store_true',
                        default=default(False),
                        help='print nothing to stderr.')
    parser.add_argument('--debug', action='store_true',
                        default=default(False),
                        help='run with the fixed seed 42.')
    parser.add_argument('--profile', action='store_true',
                        default=default(False),
                        help='profile the run with yappi and print function '
                             'statistics to stderr.')


def add_inputs(parser):
    parser.add_argument('--in', dest='inputs', action='append',
                        help='an input artifact; repeat for several.')


def build_parser():
    parser = ArgumentParser(
        prog='ymt',
        description='Compute with Yang-Mills-type theories and their '
                    'extensions on finite lattices.')
    add_common(parser)
    groups = parser.add_subparsers(dest='group', metavar='command')
    groups.required = True

    def leaf(subparsers, name, help_text):
        command = subparsers.add_parser(name, help=help_text)
        add_common(command, suppress=True)

        return command

    rank = groups.add_parser('rank', help='rank of the space of linear '
                                          'YMT theories.')
    rank_actions = rank.add_subparsers(dest='action', metavar='action')
    rank_actions.required = True
    bound = leaf(rank_actions, 'bound', 'bound the rank for a base of '
                                        'dimension n and group dimension l.')
    bound.add_argument('--n', type=int, required=True)
    bound.add_argument('--l', type=int, required=True)
    bound.add_argument('--q', type=int, default=None,
                       help='the connectivity of the base.')
    bound.add_argument('--contractible', action='store_true')
    bound.add_argument('--parallelizable-abelian', action='store_true')
    bound.add_argument('--algebra', default=None,
                       help='also count adjoint structures of this algebra.')
    enumerate_ = leaf(rank_actions, 'enumerate',
                      'list the (n, l) with rank at most z and their '
                      'rank bound.')
    enumerate_.add_argument('--z', type=int, required=True)
    enumerate_.add_argument('--max-n', type=int, default=12)
    enumerate_.add_argument('--max-l', type=int, default=12)

    algebra = groups.add_parser('algebra', help='Lie algebra data.')
    algebra_actions = algebra.add_subparsers(dest='action', metavar='action')
    algebra_actions.required = True

    for name in ('killing', 'invariant-basis'):
        command = leaf(algebra_actions, name, '%s of an algebra.' % name)
        command.add_argument('--algebra', default=None,
                             help='a catalog name; the scenario algebra by '
                                  'default.')

    field = groups.add_parser('field', help='connections and curvature.')
    field_actions = field.add_subparsers(dest='action', metavar='action')
    field_actions.required = True
    leaf(field_actions, 'random', 'the scenario field.')
    leaf(field_actions, 'curvature', 'the curvature of the scenario field.')

    action = groups.add_parser('action', help='action functionals.')
    action_actions = action.add_subparsers(dest='action', metavar='action')
    action_actions.required = True
    leaf(action_actions, 'eval', 'the YMT action of the scenario field.')
    gauge = leaf(action_actions, 'gauge-check',
                 'compare the action with random gauge transforms.')
    gauge.add_argument('--trials', type=int, default=32)
    leaf(action_actions, 'bf', 'the BF action at B = F.')
    leaf(action_actions, 'topological', 'the topological term.')

    ext = groups.add_parser('ext', help='extensions of YMT theories.')
    ext_actions = ext.add_subparsers(dest='action', metavar='action')
    ext_actions.required = True

    for name in CONSTRUCTORS:
        leaf(ext_actions, 'make-%s' % name, 'build the %s extension.' % name)

    for name, help_text in [('sum', 'add two extensions.'),
                            ('act', 'act with a group element.'),
                            ('module', 'act with a group ring element.'),
                            ('restrict', 'restrict to a sub-domain.'),
                            ('check', 'verify an extension.')]:
        command = leaf(ext_actions, name, help_text)
        add_inputs(command)

        if name in ('act', 'module'):
            command.add_argument('--order', type=int, default=2,
                                 help='n of the group Z/n.')

        if name == 'act':
            command.add_argument('--element', type=int, default=1)

        if name == 'module':
            command.add_argument('--coefficients', default='0:1',
                                 help='e.g. 0:1,1:-1/2.')

        if name == 'restrict':
            command.add_argument('--indices', default=None,
                                 help='comma separated domain indices; the '
                                      'connections by default.')

    def add_scalar(subparsers, name):
        command = leaf(subparsers, name, 'the scalar invariance polynomial.')
        command.add_argument('--abelian-demo', action='store_true',
                             help='use a u(1) theory, whose roots are 0 and '
                                  '1.')

        return command

    add_scalar(ext_actions, 'scalar-poly')
    roots = add_scalar(ext_actions, 'roots')
    roots.add_argument('--samples', type=int, default=0,
                       help='intersect the roots over this many samples.')

    scalar = leaf(groups, 'scalar-poly', 'alias of ext scalar-poly.')
    scalar.add_argument('--abelian-demo', action='store_true')

    cat = groups.add_parser('cat', help='the category of extensions.')
    cat_actions = cat.add_subparsers(dest='action', metavar='action')
    cat_actions.required = True

    for name in ('compose', 'classify', 'inverse', 'probe'):
        add_inputs(leaf(cat_actions, name, '%s morphisms.' % name))

    leaf(cat_actions, 'bf-iso', 'the identity to BF isomorphism.')
    terminal = leaf(cat_actions, 'terminal',
                    'check that the null extension is terminal.')
    terminal.add_argument('--candidates', nargs='+', choices=CONSTRUCTORS,
                          default=None)

    return parser


def execute(args, command_line):
    """Run parsed arguments.

    Returns: the exit status.
    """
    if args.config:
        scenario = Scenario.load(args.config)
    else:
        scenario = Scenario.from_json({})

    if args.seed is not None:
        scenario.seed = args.seed

    workbench = Workbench(scenario, command_line, args.format)
    group = args.group
    action = getattr(args, 'action', None)

    if group == 'scalar-poly':
        group, action = 'ext', 'scalar-poly'

    options = {key: value for key, value in vars(args).items()
               if key not in ('group', 'action')}
    result = workbench.run(group, action, options)

    if args.out:
        workbench.dump(result, args.out)
    else:
        sys.stdout.write(workbench.render(result))

    return EXIT_FAILED if result.get('ok') is False else EXIT_OK


def main(argv=None, debug_mode=False):
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(argv)

    if args.debug:
        debug_mode = True

    if debug_mode:
        args.seed = DEBUG_SEED

    if args.quiet:
        log.verbosity = Verbosity.SILENT
    elif args.verbose:
        log.verbosity = Verbosity.FULL
    else:
        log.verbosity = Verbosity.MINIMAL

    command_line = ' '.join(['ymt'] + [shlex.quote(a) for a in argv])

    if args.profile:
        yappi.start()

    try:
        return execute(args, command_line)
    except InputError as e:
        log.print('Input error: %s', str(e), Verbosity.MINIMAL)

        return EXIT_INPUT
    except (PreconditionError, VerificationError) as e:
        log.print('%s: %s', (type(e).__name__, e), Verbosity.MINIMAL)

        return EXIT_FAILED
    finally:
        if args.profile:
            yappi.stop()
            yappi.get_func_stats().print_all(out=sys.stderr)


if __name__ == '__main__':
    sys.exit(main())
