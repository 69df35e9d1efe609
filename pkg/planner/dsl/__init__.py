"""
Problem-file syntax: lark grammar, parser and printer.
"""

from .parser import FORMAT_VERSION, GRAMMAR_FILE, load_problem, parse_problem
from .printer import format_clause, format_problem, format_rule, format_variable

__all__ = [
    "FORMAT_VERSION",
    "GRAMMAR_FILE",
    "load_problem",
    "parse_problem",
    "format_clause",
    "format_problem",
    "format_rule",
    "format_variable",
]
