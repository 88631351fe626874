from pathlib import Path

import numpy as np
import polars as pl

from ..validation import validate_value


FLOAT_FORMAT = '.17g'


def format_float(value):
    ''' full-precision text for a float, empty for None '''
    if value is None:
        return ''
    return format(float(value), FLOAT_FORMAT)


def to_text_frame(df):
    '''
    Description
    ------------
    Casts every float column of a DataFrame to full-precision text so that
    CSV output is independent of polars' float printing.

    Parameters
    ------------
    df : pl.DataFrame
        Table to convert.

    Returns
    ------------
    out : pl.DataFrame
        Table with float columns replaced by Utf8 columns.
    '''
    validate_value(df, pl.DataFrame, 'df')

    return df.with_columns([
        pl.Series(
            name,
            [format_float(x) for x in df[name].to_list()],
            dtype=pl.Utf8,
            )
        for name, dtype in df.schema.items()
        if dtype.is_float()
        ])


def write_csv(df, path):
    '''
    Description
    ------------
    Writes a table to CSV with 17 significant digits for every float.

    Parameters
    ------------
    df : pl.DataFrame
        Table to write.
    path : str | Path
        Destination file.

    Returns
    ------------
    path : Path
        Destination file.
    '''
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    to_text_frame(df).write_csv(path)
    return path


def read_csv(path, text_columns=()):
    ''' reads a table written by write_csv, casting non-text columns to floats '''
    df = pl.read_csv(path, infer_schema=False)
    return df.with_columns([
        pl.col(name).cast(pl.Float64)
        for name in df.columns
        if name not in set(text_columns)
        ])


def columns_frame(columns):
    '''
    Description
    ------------
    Builds a DataFrame from a mapping of equally long columns, casting
    numpy arrays to Float64.

    Parameters
    ------------
    columns : dict[str, array-like]
        Column name to values.

    Returns
    ------------
    df : pl.DataFrame
        Assembled table.
    '''
    data = {}
    for key, values in columns.items():
        if isinstance(values, np.ndarray):
            data[key] = pl.Series(key, values.astype(float), dtype=pl.Float64)
        else:
            data[key] = pl.Series(key, values)
    return pl.DataFrame(data)
