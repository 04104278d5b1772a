import csv
import json
import math
import os

def format_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return "%.17g" % value
    if value is None:
        return ""
    return str(value)

def write_csv(path, columns, rows):
    _ensure_parent(path)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(row.get(column)) for column in columns])
    return path

def write_json(path, data):
    _ensure_parent(path)
    with open(path, "w") as f:
        json.dump(_jsonable(data), f, indent=2, sort_keys=True)
        f.write("\n")
    return path

def write_report(out_dir, command, columns, rows, metadata):
    """<out_dir>/<command>.csv plus the <command>.json metadata sidecar."""
    csv_path = write_csv(os.path.join(out_dir, "%s.csv" % command), columns, rows)
    json_path = write_json(os.path.join(out_dir, "%s.json" % command), metadata)
    return csv_path, json_path

def read_csv(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))

def _jsonable(data):
    if isinstance(data, dict):
        return { str(key): _jsonable(value) for key, value in data.items() }
    if isinstance(data, (list, tuple)):
        return [_jsonable(value) for value in data]
    if isinstance(data, float) and not math.isfinite(data):
        return format_value(data) if not math.isnan(data) else "nan"
    return data

def _ensure_parent(path):
    parent = os.path.dirname(path)
    if parent and not os.path.isdir(parent):
        os.makedirs(parent)
