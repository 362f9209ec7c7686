"""Structural complexity analysis: markup metrics and transition graphs."""

from storelab.analyzer.markup import Element, parse_document
from storelab.analyzer.complexity import complexity, page_complexity
from storelab.analyzer.crawler import TransitionGraph, UIState, crawl
from storelab.analyzer.compare import compare_report
from storelab.analyzer.report import ComplexityReport, analyze_site

__all__ = [
    "ComplexityReport",
    "Element",
    "TransitionGraph",
    "UIState",
    "analyze_site",
    "compare_report",
    "complexity",
    "crawl",
    "page_complexity",
    "parse_document",
]
