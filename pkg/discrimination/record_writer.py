"""CSV / JSONL output of experiment records, and parsing them back.

CSV files always start with a header row; JSONL files hold one JSON object
per record and nothing else. Both are byte-stable for identical records.
"""
import csv
import io
import json
import logging
from pathlib import Path

from rest_framework.renderers import JSONRenderer

from .exceptions import EmissionError, ValidationError
from .serializers import ExperimentRecordSerializer

logger = logging.getLogger(__name__)

FORMATS = ('csv', 'jsonl')
FIELDS = ['experiment', 'd', 'trial', 'stream_id', 'metric', 'value', 'standard_error']


def _csv_row(data):
    return {k: ('' if data[k] is None else data[k]) for k in FIELDS}


def render(records, fmt):
    """Records rendered to the output text of the given format."""
    if fmt not in FORMATS:
        raise ValidationError(f"format must be one of {FORMATS}, got {fmt!r}")
    if fmt == 'jsonl':
        renderer = JSONRenderer()
        lines = [renderer.render(ExperimentRecordSerializer(r).data).decode('utf-8') for r in records]
        return ''.join(line + '\n' for line in lines)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=FIELDS, lineterminator='\n')
    writer.writeheader()
    for record in records:
        writer.writerow(_csv_row(ExperimentRecordSerializer(record).data))
    return buffer.getvalue()


def emit(records, fmt, path):
    """Write records to path; I/O failures surface as EmissionError."""
    text = render(records, fmt)
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8', newline='') as handle:
            handle.write(text)
    except OSError as exc:
        raise EmissionError(f"Could not write {path}: {exc}") from exc
    logger.info("Wrote %d records to %s", len(records), path)
    return path


def _format_for(path, fmt):
    if fmt:
        return fmt
    suffix = Path(path).suffix.lstrip('.').lower()
    if suffix not in FORMATS:
        raise ValidationError(f"Cannot infer the format of {path}; pass fmt explicitly")
    return suffix


def _parse(payload):
    serializer = ExperimentRecordSerializer(data=payload)
    if not serializer.is_valid():
        raise ValidationError(f"Malformed record {payload!r}: {serializer.errors}")
    return serializer.save()


def load_records(path, fmt=None):
    """Parse an emitted file back into ExperimentRecord objects."""
    fmt = _format_for(path, fmt)
    try:
        with open(path, encoding='utf-8', newline='') as handle:
            if fmt == 'jsonl':
                payloads = [json.loads(line) for line in handle if line.strip()]
            else:
                payloads = [
                    {k: (None if v == '' else v) for k, v in row.items()}
                    for row in csv.DictReader(handle)
                ]
    except OSError as exc:
        raise EmissionError(f"Could not read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"Invalid JSONL in {path}: {exc}") from exc
    return [_parse(p) for p in payloads]
