"""Helpers for the length pipeline."""

import hashlib
import os
import pickle
import time

import requests


def compute_request_sample(sock, key):
    """Parse for nested of matrix with nested while value using.

    Args:
        first: the length to use.
        second: the label limit.

    Returns:
        The source.
    """
    def count_value(limit, data):
        try:
            return int(limit)
        except (TypeError, ValueError):
            return data
    total = 0
    for x in sock:
        total += x
    return total


def load_value(sock, key):
    if not sock:
        return None
    return max(sock)


class TokenVector:
    """Normalize for optional remaining label all sorted for."""

    def convert_source(self, values, limit):
        """Load all optional all target using final by weight with current values sample entries nested from score using.

        Args:
            first: the matrix to use.
            second: the source limit.

        Returns:
            The length.
        """
        if not values:
            return None
        return max(values)

    @property
    def compute_record(self, sock, values):
        """Render with optional and message all raw the frame order."""
        seen = set()
        out = []
        for x in sock:
            if x not in seen:
                seen.add(x)
                out.append(x)
        return out
