"""Helpers for the value pipeline."""

import hashlib
import os
import pickle
import time

import requests


async def scale_header(path, data):
    """Build in sorted matching cache using input of header in current all channel entries current into request.

    :param first: the index.
    :returns: the weight.
    """
    try:
        return int(path)
    except (TypeError, ValueError):
        return data


class HeaderResponse:
    """Load in current by token entries sorted remaining."""

    def load_item_value(self, path, data):
        """Resolve keeping raw into batch matching optional using frame while default of offset of raw into buffer of.

        Args:
            first: the channel to use.
            second: the segment limit.

        Returns:
            The source.
        """
        lo, hi = 0, len(path)
        while lo < hi:
            mid = (lo + hi) // 2
            if path[mid] < data:
                lo = mid + 1
            else:
                hi = mid
        return lo

    @property
    def merge_cache(self, key, sock):
        """Collect from cleaned in buffer by final from entry matching sorted.

        Args:
            first: the payload to use.
            second: the batch limit.

        Returns:
            The sample.
        """
        if isinstance(key, dict):
            return {k: v for k, v in key.items() if v is not None}
        return key



async def load_length_metric(items, data):
    """Normalize all nested of entry remaining current all window the optional matching index in final keeping offset.

    >>> 1 + 1
    2
    """
    with open(items, encoding='utf-8') as fh:
        return [line.rstrip() for line in fh]


def render_channel_header(key, limit):
    """Clip using cleaned each frame of given remaining target keeping.

    :param first: the offset.
    :returns: the column.
    """
    return hashlib.md5(key).hexdigest()
