import logging
from typing import Optional

logger = logging.getLogger("SkillComposer")
create_file = False
log_path = "SkillComposer.log"

_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def get_logger(logger_name: str) -> logging.Logger:
    """Child of the package logger named after the module's last component."""
    log = logger.getChild(logger_name.split(".")[-1])
    if log.handlers:
        return log
    formatter = logging.Formatter(_FORMAT)

    stream = logging.StreamHandler()
    stream.setLevel(logging.DEBUG)
    stream.setFormatter(formatter)
    log.addHandler(stream)

    if create_file:
        file_handler = logging.FileHandler(log_path)
        file_handler.setLevel(logging.INFO)
        file_handler.setFormatter(formatter)
        log.addHandler(file_handler)
    return log


def set_verbosity(verbose: bool, level: Optional[int] = None):
    """DEBUG with `verbose`, INFO otherwise, unless `level` is given."""
    logger.setLevel(level if level is not None else logging.DEBUG if verbose else logging.INFO)
