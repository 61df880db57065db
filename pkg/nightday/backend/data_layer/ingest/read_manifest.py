from pathlib import Path
from typing import List, Union

from nightday.backend.data_layer.models.run_config import ManifestEntry
from nightday.system.exceptions import EmptyInputError, InputError, InvalidSpecError


def read_manifest(path: Union[str, Path]) -> List[ManifestEntry]:
    """
    One `symbol,path[,group]` per line; blank lines and `#` comments are skipped.
    Relative paths are resolved against the manifest's folder.
    """
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8-sig").splitlines()
    except (OSError, UnicodeDecodeError) as e:
        raise InputError(f"Could not read manifest {path}: {e}") from e

    entries: List[ManifestEntry] = []
    for line_number, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = [field.strip() for field in stripped.split(",")]
        if len(fields) not in (2, 3) or not fields[0] or not fields[1]:
            raise InvalidSpecError(f"{path}:{line_number}: expected `symbol,path[,group]`, got `{stripped}`")
        file_path = Path(fields[1])
        if not file_path.is_absolute():
            file_path = path.parent / file_path
        group = fields[2] if len(fields) == 3 and fields[2] else None
        entries.append(ManifestEntry(symbol=fields[0], path=str(file_path), group=group))

    if not entries:
        raise EmptyInputError(f"Manifest {path} lists no files")

    symbols = [entry.symbol for entry in entries]
    duplicates = sorted({symbol for symbol in symbols if symbols.count(symbol) > 1})
    if duplicates:
        raise InvalidSpecError(f"Manifest {path} repeats symbol(s) {duplicates}")
    return entries
