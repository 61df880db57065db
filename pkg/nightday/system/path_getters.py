from datetime import datetime
from pathlib import Path
from typing import Optional, Union

from nightday.system.default_settings import BASE_DATA_FOLDER_NAME, LOG_FILE_FOLDER_NAME


def os_independent_home_dir():
    return str(Path.home())


def get_base_data_folder_path(parent_folder: Union[str, Path] = None) -> str:
    if parent_folder is None:
        parent_folder = os_independent_home_dir()
    base_folder_path = Path(parent_folder) / BASE_DATA_FOLDER_NAME
    base_folder_path.mkdir(exist_ok=True, parents=True)
    return str(base_folder_path)


def get_log_file_path(log_dir: Optional[Union[str, Path]] = None) -> str:
    if log_dir is None:
        log_folder_path = Path(get_base_data_folder_path()) / LOG_FILE_FOLDER_NAME
    else:
        log_folder_path = Path(log_dir)
    log_folder_path.mkdir(exist_ok=True, parents=True)
    return str(log_folder_path / create_log_file_name())


def create_log_file_name():
    return "log_" + get_current_date_time_string() + ".log"


def get_current_date_time_string():
    return datetime.now().isoformat().replace(":", "_").replace(".", "_")


def clean_path_string(filename: str) -> str:
    return filename.replace(":", "_").replace(" ", "_").replace("/", "_").replace("\\", "_")


def get_output_path(out_dir: Union[str, Path], symbol: str, suffix: str, extension: str) -> Path:
    out_path = Path(out_dir)
    out_path.mkdir(exist_ok=True, parents=True)
    return out_path / f"{clean_path_string(symbol)}_{suffix}.{extension}"


def get_template_folder_path() -> str:
    return str(Path(__file__).parent.parent / "backend" / "report" / "templates")


def get_run_tomls_folder_path() -> str:
    return str(Path(__file__).parent / "run_tomls")
