import sys
from collections.abc import Sequence
from .fit import fit
from .diagnose import diagnose
from .sim import sim, SIMULATORS


def print_help():
    print('Fixed-design GLM inference and limit theorem laboratory')
    print()
    print('Usage: glm_limits <command> <arguments>')
    print()
    print('Commands:')
    print('    fit\tFit a GLM to a CSV file, with Wald intervals')
    print('    diagnose\tReport regularity conditions of a design')
    print('    sim\tRun a Monte Carlo experiment: {}'.format(', '.join(SIMULATORS)))
    print()
    print('Run glm_limits <command> --help to see a command help.')


def main(argv: Sequence[str] | None = None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    if not args:
        print_help()
        return 1

    op = args[0].strip().lower()
    try:
        if op == 'fit':
            return fit(args[1:])
        elif op == 'diagnose':
            return diagnose(args[1:])
        elif op == 'sim':
            return sim(args[1:])
        elif op in ('-h', '--help', 'help'):
            print_help()
            return 0
    except SystemExit as e:
        # argparse exits on --help and on bad arguments
        return e.code if isinstance(e.code, int) else 1
    print_help()
    return 1


if __name__ == '__main__':
    sys.exit(main())
