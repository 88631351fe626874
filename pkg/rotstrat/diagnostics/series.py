import numpy as np
import polars as pl

from ..frame import columns_frame
from ..mixins import ReprMixin
from ..validation import validate_array, validate_value


class TimeSeries(ReprMixin):
    '''
    Description
    ------------
    Named scalar samples at strictly increasing times, backed by a polars
    frame with columns 't' and 'value'.

    Parameters
    ------------
    name : str
        Quantity name, used as the column name in series.csv.
    t : array-like
        Sample times, strictly increasing.
    values : array-like
        Finite sample values.
    '''

    _repr_attrs = ('name', 'size', 'span')

    def __init__(self, name, t, values):
        validate_value(name, str, 'name')
        t = np.asarray(t, dtype=float)
        values = np.asarray(values, dtype=float)
        validate_array(t, 't', shape=(None,))
        validate_array(values, 'values', shape=t.shape)
        if t.size > 1 and np.any(np.diff(t) <= 0):
            raise ValueError("'t' must be strictly increasing.")

        self.name = name
        self.frame = pl.DataFrame({'t': t, 'value': values})


    #╭-------------------------------------------------------------------------╮
    #| Class Methods                                                           |
    #╰-------------------------------------------------------------------------╯

    @classmethod
    def from_frame(cls, df, name, column=None):
        ''' builds a series from a frame with a 't' column '''
        column = name if column is None else column
        return cls(name, df['t'].to_numpy(), df[column].to_numpy())


    #╭-------------------------------------------------------------------------╮
    #| Properties                                                              |
    #╰-------------------------------------------------------------------------╯

    @property
    def t(self):
        return self.frame['t'].to_numpy()

    @property
    def values(self):
        return self.frame['value'].to_numpy()

    @property
    def tau(self):
        return np.log1p(self.t)

    @property
    def size(self):
        return self.frame.height

    @property
    def span(self):
        if self.size == 0:
            return None
        t = self.t
        return (float(t[0]), float(t[-1]))


    #╭-------------------------------------------------------------------------╮
    #| Magic Methods                                                           |
    #╰-------------------------------------------------------------------------╯

    def __len__(self):
        return self.size


    #╭-------------------------------------------------------------------------╮
    #| Methods                                                                 |
    #╰-------------------------------------------------------------------------╯

    def window(self, t0=None, t1=None):
        ''' samples with t0 ≤ t ≤ t1 '''
        df = self.frame
        if t0 is not None:
            df = df.filter(pl.col('t') >= t0)
        if t1 is not None:
            df = df.filter(pl.col('t') <= t1)
        return TimeSeries.from_frame(df, self.name, 'value')

    def value_at(self, t):
        ''' sample closest to time t '''
        index = int(np.argmin(np.abs(self.t - t)))
        return float(self.values[index])


def default_window(ts):
    '''
    Description
    ------------
    Last half of the series' span measured in τ = log(1 + t).

    Parameters
    ------------
    ts : TimeSeries
        Series to fit.

    Returns
    ------------
    window : tuple[float, float]
        (t0, t1) in unscaled time.
    '''
    validate_value(ts, TimeSeries, 'ts')
    start, end = ts.span
    tau0, tau1 = np.log1p(start), np.log1p(end)
    return (float(np.expm1(0.5 * (tau0 + tau1))), end)


def series_frame(t, series):
    '''
    Description
    ------------
    Assembles the series.csv table: t, tau, then one column per series.

    Parameters
    ------------
    t : array-like
        Record times.
    series : dict[str, array-like]
        Column name to values, in output order.

    Returns
    ------------
    df : pl.DataFrame
    '''
    t = np.asarray(t, dtype=float)
    columns = {'t': t, 'tau': np.log1p(t)}
    for name, values in series.items():
        columns[name] = np.asarray(values, dtype=float)
    return columns_frame(columns)
