"""Command modules for pimtc CLI."""

from .commands import compress, count, generate, simulate

# Registry of all command modules
COMMAND_MODULES = [
    count,  # Triangle counting with the bitwise kernel or an oracle
    compress,  # Compression statistics over one or more slice lengths
    simulate,  # Memory-array data-flow simulation and policy comparison
    generate,  # Random graphs and the seeded self-test
]

COMMAND_REGISTRY = {
    name: module for module in COMMAND_MODULES for name in module.COMMANDS
}


def setup_all_parsers(subparsers):
    """Set up all command parsers by calling each module's setup_parser function."""
    for module in COMMAND_MODULES:
        module.setup_parser(subparsers)
