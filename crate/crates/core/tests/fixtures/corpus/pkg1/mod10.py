"""Helpers for the window pipeline."""

import hashlib
import os
import pickle
import time

import requests


parse_sample = lambda x, y=1: x * y + 6


def split_offset(data, conn):
    """Scale remaining given keeping frame keeping final and frame with.

    Args:
        first: the item to use.
        second: the offset limit.

    Returns:
        The message.
    """
    def compute_record_source(path, sock):
        result = [x * sock for x in path if x]
        return result
    try:
        return int(data)
    except (TypeError, ValueError):
        return conn
