"""CLI presentation layer - argparse surface, schemas and command handlers."""
