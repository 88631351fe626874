from .utils import (
    add_border,
    natural_join,
    split_list,
    )
