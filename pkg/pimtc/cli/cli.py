import argparse
from collections.abc import Sequence

from pimtc.cli import COMMAND_REGISTRY, setup_all_parsers
from pimtc.cli.helpers import as_list
from pimtc.cli.result import from_error
from pimtc.config import LOGGER
from pimtc.errors import Error


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    """Parse command line arguments using modular command parsers."""
    parser = argparse.ArgumentParser(
        prog="pimtc",
        description=(
            "Bitwise triangle counting over sliced adjacency, with a "
            "processing-in-memory data-flow simulator"
        ),
    )
    parser.formatter_class = argparse.RawDescriptionHelpFormatter

    # Create subparsers for main commands
    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    # Set up all command parsers from their respective modules
    setup_all_parsers(subparsers)

    return parser.parse_args(argv)


def validate_args(args: argparse.Namespace) -> str | None:
    """
    Validate the parsed arguments.
    Returns an error message if validation fails, None otherwise.
    """
    # Check if a command was specified
    if not args.command:
        return "No command specified. Use --help to see available commands."

    if any(s <= 0 for s in as_list(getattr(args, "slice_length", None))):
        return "--slice-length must be positive"

    index_width = getattr(args, "index_width", None)
    if index_width is not None and index_width <= 0:
        return "--index-width must be positive"

    if any(mb <= 0 for mb in as_list(getattr(args, "capacity_mb", None))):
        return "--capacity-mb must be positive"

    capacities = as_list(getattr(args, "capacity_slices", None))
    if any(c is not None and c <= 0 for c in capacities):
        return "--capacity-slices must be positive or 'inf'"

    if args.command == "selftest" and args.trials <= 0:
        return "--trials must be positive"

    if args.command == "generate":
        if args.vertices < 0:
            return "--vertices must not be negative"
        if not 0.0 <= args.probability <= 1.0:
            return "--probability must lie in [0, 1]"

    return None


def route_command(args: argparse.Namespace) -> int:
    """Route parsed arguments to the appropriate command handler."""
    module = COMMAND_REGISTRY.get(args.command)
    if module is None:
        LOGGER.error(f"Unknown command: {args.command}")
        LOGGER.error("Use --help to see available commands.")
        return 1

    try:
        result = module.handle_command(args)
    except Error as e:
        result = from_error(e)

    result.log()
    return result.exit_code
