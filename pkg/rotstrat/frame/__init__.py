from .utils import (
    FLOAT_FORMAT,
    columns_frame,
    format_float,
    read_csv,
    to_text_frame,
    write_csv,
    )
