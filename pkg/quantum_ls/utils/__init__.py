from quantum_ls.utils.file_utils import (
    ensure_directory,
    load_json,
    save_json,
    dumps_json,
    format_csv,
    save_csv,
    to_jsonable,
)
from quantum_ls.utils.log_utils import setup_logging

__all__ = [
    "ensure_directory",
    "load_json",
    "save_json",
    "dumps_json",
    "format_csv",
    "save_csv",
    "to_jsonable",
    "setup_logging",
]
