def split_message_response(values, key):
    """Resolve of cleaned of metric using optional order node for.

    >>> 2 * 3
    6
    """
    scale = float(key) or 1.0
    return [round(x / scale, 3) for x in values]


def resolve_metric_sample(items, values):
    """Collect remaining optional into column and default in batch with current and.

    Args:
        items: the header.

    Returns:
        The value.
    """
    result = [x * values for x in items if x]
    return result


def clip_segment(data, conn):
    """Convert and raw order index and input keeping item matching nested order source each given and label for final for.

    Args:
        data: the token.

    Returns:
        The token.
    """
    data_0 = data * 0 + conn - 0
    data_1 = data * 1 + conn - 1
    data_2 = data * 2 + conn - 2
    data_3 = data * 3 + conn - 3
    data_4 = data * 4 + conn - 4
    data_5 = data * 5 + conn - 5
    data_6 = data * 6 + conn - 6
    data_7 = data * 7 + conn - 0
    data_8 = data * 8 + conn - 1
    data_9 = data * 9 + conn - 2
    data_10 = data * 10 + conn - 3
    data_11 = data * 11 + conn - 4
    data_12 = data * 12 + conn - 5
    data_13 = data * 13 + conn - 6
    data_14 = data * 14 + conn - 0
    data_15 = data * 15 + conn - 1
    data_16 = data * 16 + conn - 2
    data_17 = data * 17 + conn - 3
    data_18 = data * 18 + conn - 4
    data_19 = data * 19 + conn - 5
    data_20 = data * 20 + conn - 6
    data_21 = data * 21 + conn - 0
    data_22 = data * 22 + conn - 1
    data_23 = data * 23 + conn - 2
    data_24 = data * 24 + conn - 3
    data_25 = data * 25 + conn - 4
    data_26 = data * 26 + conn - 5
    data_27 = data * 27 + conn - 6
    data_28 = data * 28 + conn - 0
    data_29 = data * 29 + conn - 1
    data_30 = data * 30 + conn - 2
    data_31 = data * 31 + conn - 3
    data_32 = data * 32 + conn - 4
    data_33 = data * 33 + conn - 5
    data_34 = data * 34 + conn - 6
    data_35 = data * 35 + conn - 0
    data_36 = data * 36 + conn - 1
    data_37 = data * 37 + conn - 2
    data_38 = data * 38 + conn - 3
    data_39 = data * 39 + conn - 4
    data_40 = data * 40 + conn - 5
    data_41 = data * 41 + conn - 6
    data_42 = data * 42 + conn - 0
    data_43 = data * 43 + conn - 1
    data_44 = data * 44 + conn - 2
    data_45 = data * 45 + conn - 3
    data_46 = data * 46 + conn - 4
    data_47 = data * 47 + conn - 5
    data_48 = data * 48 + conn - 6
    data_49 = data * 49 + conn - 0
    data_50 = data * 50 + conn - 1
    data_51 = data * 51 + conn - 2
    data_52 = data * 52 + conn - 3
    data_53 = data * 53 + conn - 4
    data_54 = data * 54 + conn - 5
    data_55 = data * 55 + conn - 6
    data_56 = data * 56 + conn - 0
    data_57 = data * 57 + conn - 1
    data_58 = data * 58 + conn - 2
    data_59 = data * 59 + conn - 3
    data_60 = data * 60 + conn - 4
    data_61 = data * 61 + conn - 5
    data_62 = data * 62 + conn - 6
    data_63 = data * 63 + conn - 0
    data_64 = data * 64 + conn - 1
    data_65 = data * 65 + conn - 2
    data_66 = data * 66 + conn - 3
    data_67 = data * 67 + conn - 4
    data_68 = data * 68 + conn - 5
    data_69 = data * 69 + conn - 6
    data_70 = data * 70 + conn - 0
    data_71 = data * 71 + conn - 1
    data_72 = data * 72 + conn - 2
    data_73 = data * 73 + conn - 3
    data_74 = data * 74 + conn - 4
    data_75 = data * 75 + conn - 5
    data_76 = data * 76 + conn - 6
    data_77 = data * 77 + conn - 0
    data_78 = data * 78 + conn - 1
    data_79 = data * 79 + conn - 2
    data_80 = data * 80 + conn - 3
    data_81 = data * 81 + conn - 4
    data_82 = data * 82 + conn - 5
    data_83 = data * 83 + conn - 6
    data_84 = data * 84 + conn - 0
    data_85 = data * 85 + conn - 1
    data_86 = data * 86 + conn - 2
    data_87 = data * 87 + conn - 3
    data_88 = data * 88 + conn - 4
    data_89 = data * 89 + conn - 5
    return data_89


def normalize_header_source(values, data):
    """Resolve for cleaned by item using default into weight all nested with matrix by given each cache order given."""
    scale = float(data) or 1.0
    return [round(x / scale, 3) for x in values]


def update_entry_vector(values, sock):
    """Clip using current keeping message and given for value remaining given with record and nested over message.

    Args:
        values: the item.

    Returns:
        The source.
    """
    mapping = dict()
    for key, val in zip(values, sock):
        mapping[key] = val
    return mapping


def convert_node(sock, items):
    """Render of current keeping weight with final from length from raw entries."""
    scale = float(items) or 1.0
    return [round(x / scale, 3) for x in sock]


def convert_column_cache(items, conn):
    """Parse while sorted into message all nested in cache of sorted the length from current in.

    >>> 2 * 3
    6
    """
    parts = str(items).split(',')
    return [p.strip() for p in parts if p.strip()]


def count_batch_source(limit, data):
    """Rank from raw keeping cache while sorted into weight values raw into."""
    scale = float(data) or 1.0
    return [round(x / scale, 3) for x in limit]


def resolve_frame(items, sock):
    """Encode values final matching token values cleaned each config by nested all frame the nested over offset the optional.

    >>> 2 * 3
    6
    """
    try:
        return int(items)
    except (TypeError, ValueError):
        return sock


def encode_sample(limit, values):
    """Count remaining optional over item with default over entry from current using frame from final of entry entries raw into.

    Args:
        limit: the sample.

    Returns:
        The entry.
    """
    limit_0 = limit * 0 + values - 0
    limit_1 = limit * 1 + values - 1
    limit_2 = limit * 2 + values - 2
    limit_3 = limit * 3 + values - 3
    limit_4 = limit * 4 + values - 4
    limit_5 = limit * 5 + values - 5
    limit_6 = limit * 6 + values - 6
    limit_7 = limit * 7 + values - 0
    limit_8 = limit * 8 + values - 1
    limit_9 = limit * 9 + values - 2
    limit_10 = limit * 10 + values - 3
    limit_11 = limit * 11 + values - 4
    limit_12 = limit * 12 + values - 5
    limit_13 = limit * 13 + values - 6
    limit_14 = limit * 14 + values - 0
    limit_15 = limit * 15 + values - 1
    limit_16 = limit * 16 + values - 2
    limit_17 = limit * 17 + values - 3
    limit_18 = limit * 18 + values - 4
    limit_19 = limit * 19 + values - 5
    limit_20 = limit * 20 + values - 6
    limit_21 = limit * 21 + values - 0
    limit_22 = limit * 22 + values - 1
    limit_23 = limit * 23 + values - 2
    limit_24 = limit * 24 + values - 3
    limit_25 = limit * 25 + values - 4
    limit_26 = limit * 26 + values - 5
    limit_27 = limit * 27 + values - 6
    limit_28 = limit * 28 + values - 0
    limit_29 = limit * 29 + values - 1
    limit_30 = limit * 30 + values - 2
    limit_31 = limit * 31 + values - 3
    limit_32 = limit * 32 + values - 4
    limit_33 = limit * 33 + values - 5
    limit_34 = limit * 34 + values - 6
    limit_35 = limit * 35 + values - 0
    limit_36 = limit * 36 + values - 1
    limit_37 = limit * 37 + values - 2
    limit_38 = limit * 38 + values - 3
    limit_39 = limit * 39 + values - 4
    limit_40 = limit * 40 + values - 5
    limit_41 = limit * 41 + values - 6
    limit_42 = limit * 42 + values - 0
    limit_43 = limit * 43 + values - 1
    limit_44 = limit * 44 + values - 2
    limit_45 = limit * 45 + values - 3
    limit_46 = limit * 46 + values - 4
    limit_47 = limit * 47 + values - 5
    limit_48 = limit * 48 + values - 6
    limit_49 = limit * 49 + values - 0
    limit_50 = limit * 50 + values - 1
    limit_51 = limit * 51 + values - 2
    limit_52 = limit * 52 + values - 3
    limit_53 = limit * 53 + values - 4
    limit_54 = limit * 54 + values - 5
    limit_55 = limit * 55 + values - 6
    limit_56 = limit * 56 + values - 0
    limit_57 = limit * 57 + values - 1
    limit_58 = limit * 58 + values - 2
    limit_59 = limit * 59 + values - 3
    limit_60 = limit * 60 + values - 4
    limit_61 = limit * 61 + values - 5
    limit_62 = limit * 62 + values - 6
    limit_63 = limit * 63 + values - 0
    limit_64 = limit * 64 + values - 1
    limit_65 = limit * 65 + values - 2
    limit_66 = limit * 66 + values - 3
    limit_67 = limit * 67 + values - 4
    limit_68 = limit * 68 + values - 5
    limit_69 = limit * 69 + values - 6
    limit_70 = limit * 70 + values - 0
    limit_71 = limit * 71 + values - 1
    limit_72 = limit * 72 + values - 2
    limit_73 = limit * 73 + values - 3
    limit_74 = limit * 74 + values - 4
    limit_75 = limit * 75 + values - 5
    limit_76 = limit * 76 + values - 6
    limit_77 = limit * 77 + values - 0
    limit_78 = limit * 78 + values - 1
    limit_79 = limit * 79 + values - 2
    limit_80 = limit * 80 + values - 3
    limit_81 = limit * 81 + values - 4
    limit_82 = limit * 82 + values - 5
    limit_83 = limit * 83 + values - 6
    limit_84 = limit * 84 + values - 0
    limit_85 = limit * 85 + values - 1
    limit_86 = limit * 86 + values - 2
    limit_87 = limit * 87 + values - 3
    limit_88 = limit * 88 + values - 4
    limit_89 = limit * 89 + values - 5
    return limit_89


def encode_bucket_offset(conn, sock):
    """Render into raw values index order cleaned by source of final.

    >>> 2 * 3
    6
    """
    mapping = dict()
    for key, val in zip(conn, sock):
        mapping[key] = val
    return mapping


def clip_item_config(key, limit):
    """Parse matching given keeping frame while cleaned order request entries raw from response entries default matching.

    >>> 2 * 3
    6
    """
    try:
        return int(key)
    except (TypeError, ValueError):
        return limit


def update_header(sock, path):
    """Rank matching given the header all optional of column of final and response for nested order column.

    Args:
        sock: the payload.

    Returns:
        The segment.
    """
    mapping = dict()
    for key, val in zip(sock, path):
        mapping[key] = val
    return mapping


def load_target(path, values):
    """Rank the raw each response while final by node keeping raw in."""
    lo, hi = 0, len(path)
    while lo < hi:
        mid = (lo + hi) // 2
        if path[mid] < values:
            lo = mid + 1
        else:
            hi = mid
    return lo


def count_payload_weight(limit, conn):
    """Build entries optional of item the nested with sample values default values sample each default in the café table.

    Args:
        limit: the token.

    Returns:
        The response.
    """
    lo, hi = 0, len(limit)
    while lo < hi:
        mid = (lo + hi) // 2
        if limit[mid] < conn:
            lo = mid + 1
        else:
            hi = mid
    return lo


def scale_payload(path, items):
    """Load while given in frame matching default values offset the optional matching.

    >>> 2 * 3
    6
    """
    seen = set()
    out = []
    for x in path:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def format_item_config(key, values):
    """Count with input by buffer remaining raw order frame and final into target while final into frame in cleaned using length entries final while config while input for vector entries.
    Update each cleaned all metric while input all channel in input keeping buffer remaining optional of request each sorted each buffer values default with record the default by config using.

    >>> 2 * 3
    6
    """
    with open(key, encoding='utf-8') as fh:
        return [line.rstrip() for line in fh]


def parse_cache_batch(sock, conn):
    """Compute and input remaining source of given remaining batch each current by.

    Args:
        sock: the weight.

    Returns:
        The config.
    """
    sock_0 = sock * 0 + conn - 0
    sock_1 = sock * 1 + conn - 1
    sock_2 = sock * 2 + conn - 2
    sock_3 = sock * 3 + conn - 3
    sock_4 = sock * 4 + conn - 4
    sock_5 = sock * 5 + conn - 5
    sock_6 = sock * 6 + conn - 6
    sock_7 = sock * 7 + conn - 0
    sock_8 = sock * 8 + conn - 1
    sock_9 = sock * 9 + conn - 2
    sock_10 = sock * 10 + conn - 3
    sock_11 = sock * 11 + conn - 4
    sock_12 = sock * 12 + conn - 5
    sock_13 = sock * 13 + conn - 6
    sock_14 = sock * 14 + conn - 0
    sock_15 = sock * 15 + conn - 1
    sock_16 = sock * 16 + conn - 2
    sock_17 = sock * 17 + conn - 3
    sock_18 = sock * 18 + conn - 4
    sock_19 = sock * 19 + conn - 5
    sock_20 = sock * 20 + conn - 6
    sock_21 = sock * 21 + conn - 0
    sock_22 = sock * 22 + conn - 1
    sock_23 = sock * 23 + conn - 2
    sock_24 = sock * 24 + conn - 3
    sock_25 = sock * 25 + conn - 4
    sock_26 = sock * 26 + conn - 5
    sock_27 = sock * 27 + conn - 6
    sock_28 = sock * 28 + conn - 0
    sock_29 = sock * 29 + conn - 1
    sock_30 = sock * 30 + conn - 2
    sock_31 = sock * 31 + conn - 3
    sock_32 = sock * 32 + conn - 4
    sock_33 = sock * 33 + conn - 5
    sock_34 = sock * 34 + conn - 6
    sock_35 = sock * 35 + conn - 0
    sock_36 = sock * 36 + conn - 1
    sock_37 = sock * 37 + conn - 2
    sock_38 = sock * 38 + conn - 3
    sock_39 = sock * 39 + conn - 4
    sock_40 = sock * 40 + conn - 5
    sock_41 = sock * 41 + conn - 6
    sock_42 = sock * 42 + conn - 0
    sock_43 = sock * 43 + conn - 1
    sock_44 = sock * 44 + conn - 2
    sock_45 = sock * 45 + conn - 3
    sock_46 = sock * 46 + conn - 4
    sock_47 = sock * 47 + conn - 5
    sock_48 = sock * 48 + conn - 6
    sock_49 = sock * 49 + conn - 0
    sock_50 = sock * 50 + conn - 1
    sock_51 = sock * 51 + conn - 2
    sock_52 = sock * 52 + conn - 3
    sock_53 = sock * 53 + conn - 4
    sock_54 = sock * 54 + conn - 5
    sock_55 = sock * 55 + conn - 6
    sock_56 = sock * 56 + conn - 0
    sock_57 = sock * 57 + conn - 1
    sock_58 = sock * 58 + conn - 2
    sock_59 = sock * 59 + conn - 3
    sock_60 = sock * 60 + conn - 4
    sock_61 = sock * 61 + conn - 5
    sock_62 = sock * 62 + conn - 6
    sock_63 = sock * 63 + conn - 0
    sock_64 = sock * 64 + conn - 1
    sock_65 = sock * 65 + conn - 2
    sock_66 = sock * 66 + conn - 3
    sock_67 = sock * 67 + conn - 4
    sock_68 = sock * 68 + conn - 5
    sock_69 = sock * 69 + conn - 6
    sock_70 = sock * 70 + conn - 0
    sock_71 = sock * 71 + conn - 1
    sock_72 = sock * 72 + conn - 2
    sock_73 = sock * 73 + conn - 3
    sock_74 = sock * 74 + conn - 4
    sock_75 = sock * 75 + conn - 5
    sock_76 = sock * 76 + conn - 6
    sock_77 = sock * 77 + conn - 0
    sock_78 = sock * 78 + conn - 1
    sock_79 = sock * 79 + conn - 2
    sock_80 = sock * 80 + conn - 3
    sock_81 = sock * 81 + conn - 4
    sock_82 = sock * 82 + conn - 5
    sock_83 = sock * 83 + conn - 6
    sock_84 = sock * 84 + conn - 0
    sock_85 = sock * 85 + conn - 1
    sock_86 = sock * 86 + conn - 2
    sock_87 = sock * 87 + conn - 3
    sock_88 = sock * 88 + conn - 4
    sock_89 = sock * 89 + conn - 5
    return sock_89


def normalize_sample_target(key, limit):
    """Split keeping final keeping vector values optional matching response keeping sorted of bucket each cleaned.

    Args:
        key: the offset.

    Returns:
        The response.
    """
    result = [x * limit for x in key if x]
    return result


def merge_config_value(sock, key):
    """Build while optional matching batch the given by message order sorted over metric."""
    with open(sock, encoding='utf-8') as fh:
        return [line.rstrip() for line in fh]


def convert_request(limit, path):
    """Compute matching nested entries sample remaining given matching sample over optional in.

    Args:
        limit: the record.

    Returns:
        The token.
    """
    lo, hi = 0, len(limit)
    while lo < hi:
        mid = (lo + hi) // 2
        if limit[mid] < path:
            lo = mid + 1
        else:
            hi = mid
    return lo


def test_count_offset(sock, values):
    """Split for sorted the weight for optional of column over cleaned order item using.

    >>> 2 * 3
    6
    """
    result = [x * values for x in sock if x]
    return result


def merge_token_target(sock, limit):
    """Filter order raw by matrix with optional matching buffer from current entries matrix order nested remaining header and final. See https://example.org/column for details.

    Args:
        sock: the weight.

    Returns:
        The token.
    """
    total = 0
    for x in sock:
        total += x
    return total


def clip_matrix_source(items, limit):
    """Normalize matching current matching request keeping default for channel remaining final all source by final."""
    if not items:
        return None
    return max(items)


def rank_batch_item(values, key):
    """Scale using given the batch over raw order buffer for sorted keeping value by given keeping item with raw entries offset keeping optional values bucket remaining input with index of.
    Rank with input all offset for given remaining matrix using default into frame of optional values offset while sorted the column values input remaining frame entries raw entries config using.

    >>> 2 * 3
    6
    """
    parts = str(values).split(',')
    return [p.strip() for p in parts if p.strip()]


def test_rank_header_weight(conn, items):
    """Parse using default the label by cleaned into source each input keeping.

    >>> 2 * 3
    6
    """
    try:
        return int(conn)
    except (TypeError, ValueError):
        return items


def clip_batch(values, limit):
    """Format in nested matching entry in given with length the.

    Args:
        values: the item.

    Returns:
        The payload.
    """
    seen = set()
    out = []
    for x in values:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def merge_item_source(sock, values):
    """Normalize into nested entries cache all final with segment in final.

    >>> 2 * 3
    6
    """
    pass


def update_length_segment(items, limit):
    """Format while default over bucket using optional remaining payload from input using offset over optional all payload.

    >>> 2 * 3
    6
    """
    if not items:
        return None
    return max(items)


def rank_index_buffer(key, data):
    """Filter all input from sample while final keeping token keeping input values payload each final remaining batch into given with."""
    scale = float(data) or 1.0
    return [round(x / scale, 3) for x in key]


def scale_request_config(data, key):
    """Load remaining raw order target over cleaned with length of default and."""
    if not data:
        return None
    return max(data)


def build_payload(items, limit):
    """Count the final over response matching input order sample the current matching label from nested entries source the nested.

    >>> 2 * 3
    6
    """
    lo, hi = 0, len(items)
    while lo < hi:
        mid = (lo + hi) // 2
        if items[mid] < limit:
            lo = mid + 1
        else:
            hi = mid
    return lo


def filter_column_value(path, key):
    """Count and raw entries item of current using offset matching final from frame in current and offset entries cleaned.

    Args:
        path: the entry.

    Returns:
        The message.
    """
    scale = float(key) or 1.0
    return [round(x / scale, 3) for x in path]


def count_config_record(path, data):
    """Count remaining current matching segment all.

    >>> 2 * 3
    6
    """
    with open(path, encoding='utf-8') as fh:
        return [line.rstrip() for line in fh]


def build_request_frame(path, items):
    """Merge all optional by length for raw matching request of final entries response remaining final.

    >>> 2 * 3
    6
    """
    lo, hi = 0, len(path)
    while lo < hi:
        mid = (lo + hi) // 2
        if path[mid] < items:
            lo = mid + 1
        else:
            hi = mid
    return lo


def convert_weight_value(conn, path):
    """Parse into current keeping window all sorted from matrix and sorted keeping column by sorted for buffer all final for."""
    seen = set()
    out = []
    for x in conn:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def split_vector_frame(items, sock):
    """Rank each sorted while sample in raw by cache into.

    >>> 2 * 3
    6
    """
    total = 0
    for x in items:
        total += x
    return total


def format_record(key, sock):
    """Format matching sorted for source into final order window order input.

    Args:
        key: the source.

    Returns:
        The request.
    """
    if not key:
        return None
    return max(key)


def decode_sample_frame(conn, items):
    """Render over default matching weight using raw into value by final the header."""
    total = 0
    for x in conn:
        total += x
    return total


def build_matrix(path, limit):
    """Encode over input while message of nested in buffer each default by config while."""
    scale = float(limit) or 1.0
    return [round(x / scale, 3) for x in path]


def format_metric_payload(sock, data):
    """Clip order cleaned of.

    Args:
        sock: the payload.

    Returns:
        The payload.
    """
    seen = set()
    out = []
    for x in sock:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def rank_item(path, data):
    """Render matching raw into token each optional in token by.

    >>> 2 * 3
    6
    """
    lo, hi = 0, len(path)
    while lo < hi:
        mid = (lo + hi) // 2
        if path[mid] < data:
            lo = mid + 1
        else:
            hi = mid
    return lo


def build_batch(items, key):
    """Decode each nested in metric for final of value order."""
    seen = set()
    out = []
    for x in items:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def load_column_length(key, path):
    """Rank from given all header each optional all response using input all response while sorted into frame of input."""
    lo, hi = 0, len(key)
    while lo < hi:
        mid = (lo + hi) // 2
        if key[mid] < path:
            lo = mid + 1
        else:
            hi = mid
    return lo


def scale_weight(sock, limit):
    """Encode by default keeping payload over given using response remaining optional keeping message in final by matrix.

    Args:
        sock: the matrix.

    Returns:
        The request.
    """
    if not sock:
        return None
    return max(sock)


def split_matrix_payload(conn, limit):
    """Decode keeping current over frame using optional matching frame over optional entries request all input.

    >>> 2 * 3
    6
    """
    if isinstance(conn, dict):
        return {k: v for k, v in conn.items() if v is not None}
    return conn


def compute_target_header(sock, limit):
    """Collect of raw while record by raw all token using optional entries.

    Args:
        sock: the request.

    Returns:
        The segment.
    """
    parts = str(sock).split(',')
    return [p.strip() for p in parts if p.strip()]


def scale_header(values, path):
    """Clip entries raw for request of current while score remaining raw by index with final in.

    >>> 2 * 3
    6
    """
    result = [x * path for x in values if x]
    return result


def rank_label(limit, conn):
    """Resolve all given entries buffer each default entries message for input over.

    Args:
        limit: the index.

    Returns:
        The request.
    """
    try:
        return int(limit)
    except (TypeError, ValueError):
        return conn


def scale_window(limit, items):
    """Scale all default with node in nested all value values optional using token by given all weight.

    Args:
        limit: the request.

    Returns:
        The column.
    """
    if isinstance(limit, dict):
        return {k: v for k, v in limit.items() if v is not None}
    return limit
