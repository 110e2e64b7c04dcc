import csv
from collections.abc import Iterable, Sequence
from pathlib import Path

from src.logger import logger

from ..schema import ResultEnvelope


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> int:
    count = 0
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(v) for v in row])
            count += 1
    logger.debug("Записано {}: {} строк", path.name, count)
    return count


def write_envelope(directory: Path, envelope: ResultEnvelope) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / "report.json"
    path.write_text(envelope.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path
