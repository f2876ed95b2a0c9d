"""Command line interface: expression parsing, SVG drawing, subcommands."""
