# read data files into annual series

import io
import logging
import math
import numbers

import numpy as np
import pandas as pd

from pycycles import ParameterError, DataError, InsufficientDataError, \
    _as_values

logger = logging.getLogger(__name__)

# the shortest series the analysis chain accepts
MIN_YEARS = 8

MISSING_MARKERS = ('', 'NA')


class RawRecord(object):
    """One observation read from a data file.

    Attributes:
        year (int): calendar year
        month (int): calendar month 1 - 12, or None for yearly records
        value (float): the observation, NaN when missing
        missing (bool): True when the file marks the value as missing
        quality_flag (str): an optional quality column, or None
        line (int): the 1-based line of the file this came from

    """

    __slots__ = ('year', 'month', 'value', 'missing', 'quality_flag', 'line')

    def __init__(self, year, month=None, value=float('nan'), missing=False,
                 quality_flag=None, line=None):
        self.year = year
        self.month = month
        self.value = value
        self.missing = missing
        self.quality_flag = quality_flag
        self.line = line

    def __repr__(self):
        return 'RawRecord({0}, {1}, {2}{3})'.format(
            self.year, self.month, self.value,
            ', missing' if self.missing else '')


class ColumnSchema(object):
    """Where the time and value columns of a data file are.

    Columns can be given as a 0-based index or as a header name.

    Attributes:
        name (str): the schema name
        year_column (int or str): the year, or a decimal year
        value_column (int or str): the observation
        month_column (int or str): an optional month column
        date_column (int or str): an optional ISO date, used instead of
            year and month
        quality_column (int or str): an optional quality flag column
        sentinel (float): a value that marks a missing observation
        has_header (bool): the first line holds column names

    """

    __slots__ = ('name', 'year_column', 'value_column', 'month_column',
                 'date_column', 'quality_column', 'sentinel', 'has_header')

    def __init__(self, name, year_column=0, value_column=1,
                 month_column=None, date_column=None, quality_column=None,
                 sentinel=None, has_header=True):
        self.name = name
        self.year_column = year_column
        self.value_column = value_column
        self.month_column = month_column
        self.date_column = date_column
        self.quality_column = quality_column
        self.sentinel = sentinel
        self.has_header = has_header

    def __repr__(self):
        return 'ColumnSchema({0!r})'.format(self.name)


# SILSO files are headerless and mark missing sunspot numbers with -1
SCHEMAS = {
    'plain': ColumnSchema('plain', 0, 1),
    'fao': ColumnSchema('fao', 'Year', 'Value', quality_column='Flag'),
    'silso_daily': ColumnSchema('silso_daily', 0, 4, month_column=1,
                                sentinel=-1.0, has_header=False),
    'silso_monthly': ColumnSchema('silso_monthly', 0, 3, month_column=1,
                                  sentinel=-1.0, has_header=False),
    'silso_yearly': ColumnSchema('silso_yearly', 0, 1, sentinel=-1.0,
                                 has_header=False),
}


def schema_for(name):
    """Look up a named column schema.

    Args:
        name (str): one of ``plain``, ``fao``, ``silso_daily``,
            ``silso_monthly``, ``silso_yearly``

    Returns:
        :class:`.ColumnSchema`

    Raises:
        :class:`.ParameterError`

    """

    if isinstance(name, ColumnSchema):
        return name
    try:
        return SCHEMAS[name]
    except KeyError:
        raise ParameterError('unknown schema "{0}"'.format(name),
                             'expected one of {0}'.format(
                                 ', '.join(sorted(SCHEMAS))))


class MeanPolicy(object):
    """How sub-annual records become one value per year.

    Every year with data gets the arithmetic mean of its non-missing
    records.

    Attributes:
        label (str): the label given to the series
        unit (str): an opaque unit string
        min_records (int): years with fewer non-missing records are gaps

    """

    __slots__ = ('label', 'unit', 'min_records')

    def __init__(self, label='', unit='', min_records=1):
        self.label = label
        self.unit = unit
        self.min_records = min_records


class AnnualSeries(object):
    """Uniformly sampled yearly values.

    Attributes:
        start_year (int): the year of the first value
        values (numpy.ndarray): one value per consecutive year, read-only
        label (str): a name for the series
        unit (str): an opaque unit string

    """

    __slots__ = ('start_year', 'values', 'label', 'unit')

    def __init__(self, start_year, values, label='', unit=''):
        values = _as_values(values, name=label or 'series',
                            min_length=MIN_YEARS)
        values.flags.writeable = False
        self.start_year = int(start_year)
        self.values = values
        self.label = label
        self.unit = unit

    def __repr__(self):
        return 'AnnualSeries({0!r}, {1}-{2})'.format(
            self.label, self.start_year, self.end_year)

    def __len__(self):
        return self.values.size

    @property
    def end_year(self):
        return self.start_year + self.values.size - 1

    @property
    def years(self):
        """The year of each value, as an integer array."""

        return np.arange(self.start_year, self.end_year + 1)

    def with_values(self, values, label=None):
        """A series over the same years with new values."""

        return AnnualSeries(self.start_year, values,
                            label=self.label if label is None else label,
                            unit=self.unit)

    def to_frame(self):
        return pd.DataFrame({'year': self.years, 'value': self.values})


def _detect_delimiter(text):
    for line in text.splitlines():
        if line.strip():
            return ';' if line.count(';') > line.count(',') else ','

    return ','


def _column(frame, column):
    if isinstance(column, numbers.Integral):
        if not 0 <= column < frame.shape[1]:
            raise ParameterError('column {0} out of range'.format(column),
                                 'file has {0} columns'.format(
                                     frame.shape[1]))
        return frame.iloc[:, column]

    if column not in frame.columns:
        raise ParameterError('column "{0}" not found'.format(column),
                             'header has {0}'.format(
                                 ', '.join(map(str, frame.columns))))

    return frame[column]


def _field(value):
    if not isinstance(value, str):
        return ''

    return value.strip()


def _required(value, line):
    # a short row leaves its trailing cells absent, not empty
    if not isinstance(value, str):
        raise DataError('malformed row at line {0}'.format(line),
                        'too few fields')

    return value.strip()


def _parse_year(field, line):
    try:
        year = float(field)
    except ValueError:
        raise DataError('unparseable year "{0}" at line {1}'.format(
            field, line))
    if not math.isfinite(year):
        raise DataError('unparseable year "{0}" at line {1}'.format(
            field, line))

    return int(math.floor(year))


def _parse_month(field, line):
    try:
        month = int(float(field))
    except ValueError:
        month = 0
    if not 1 <= month <= 12:
        raise DataError('bad month "{0}" at line {1}'.format(field, line))

    return month


def _parse_date(field, line):
    try:
        stamp = pd.Timestamp(field)
    except ValueError:
        stamp = pd.NaT
    if stamp is pd.NaT:
        raise DataError('unparseable date "{0}" at line {1}'.format(
            field, line))

    return stamp.year, stamp.month


def _parse_value(field, schema, line):
    if field in MISSING_MARKERS:
        return float('nan'), True
    try:
        value = float(field)
    except ValueError:
        raise DataError('unparseable value "{0}" at line {1}'.format(
            field, line))
    if schema.sentinel is not None and value == schema.sentinel:
        return float('nan'), True
    if not math.isfinite(value):
        raise DataError('non-finite value "{0}" at line {1}'.format(
            field, line))

    return value, False


def parse_csv(data, schema):
    """Parse delimited text into raw records.

    The delimiter (comma or semicolon) is detected from the first line. Blank
    lines are skipped. Empty fields and ``NA`` mark missing values, and so
    does the schema's sentinel when it has one.

    Args:
        data (bytes): UTF-8 text, or a str
        schema (ColumnSchema or str): the column layout, or a schema name

    Returns:
        list of :class:`.RawRecord`

    Raises:
        :class:`.DataError`, :class:`.ParameterError`

    """

    schema = schema_for(schema)
    if isinstance(data, bytes):
        try:
            text = data.decode('utf-8-sig')
        except UnicodeDecodeError as e:
            raise DataError('input is not UTF-8', str(e))
    else:
        text = data

    if not text.strip():
        if schema.has_header:
            raise DataError('empty file', 'no header row')
        return []

    try:
        frame = pd.read_csv(io.StringIO(text),
                            sep=_detect_delimiter(text),
                            header=0 if schema.has_header else None,
                            dtype=str,
                            keep_default_na=False,
                            skip_blank_lines=False,
                            skipinitialspace=True)
    except pd.errors.ParserError as e:
        raise DataError('malformed row', str(e))
    except pd.errors.EmptyDataError as e:
        raise DataError('empty file', str(e))

    if schema.has_header:
        frame.columns = [str(name).strip() for name in frame.columns]
    header_lines = 1 if schema.has_header else 0

    if schema.date_column is not None:
        times = _column(frame, schema.date_column)
        months = None
    else:
        times = _column(frame, schema.year_column)
        months = None if schema.month_column is None else \
            _column(frame, schema.month_column)
    values = _column(frame, schema.value_column)
    # the quality column is optional even when the schema names one
    flags = None
    if schema.quality_column is not None and \
            schema.quality_column in frame.columns:
        flags = frame[schema.quality_column]

    records = []
    for i in range(frame.shape[0]):
        line = i + 1 + header_lines
        row = frame.iloc[i]
        if all(_field(v) == '' for v in row):
            continue

        time_field = _required(times.iloc[i], line)
        if schema.date_column is not None:
            year, month = _parse_date(time_field, line)
        else:
            year = _parse_year(time_field, line)
            month = None if months is None else \
                _parse_month(_required(months.iloc[i], line), line)

        value, missing = _parse_value(_required(values.iloc[i], line), schema,
                                      line)
        flag = None if flags is None else _field(flags.iloc[i]) or None
        records.append(RawRecord(year, month, value, missing, flag, line))

    logger.debug('parse_csv: %d records with schema %s',
                 len(records), schema.name)

    return records


def _fsum_mean(values):
    # exactly rounded, so the mean cannot depend on record order
    return math.fsum(values) / len(values)


def annualize(records, policy=None):
    """Average records into one value per year.

    Args:
        records (list): :class:`.RawRecord` objects, in any order
        policy (MeanPolicy): label, unit and minimum records per year

    Returns:
        :class:`.AnnualSeries`

    Raises:
        :class:`.DataError` for a year with no usable records,
        :class:`.InsufficientDataError` for fewer than 8 years

    """

    if policy is None:
        policy = MeanPolicy()

    present = [(r.year, r.value) for r in records if not r.missing]
    if not present:
        raise InsufficientDataError('no usable records')

    frame = pd.DataFrame(present, columns=['year', 'value'])
    grouped = frame.groupby('year')['value']
    counts = grouped.count()
    means = grouped.agg(_fsum_mean)

    years = counts.index[counts >= policy.min_records]
    if years.size < MIN_YEARS:
        raise InsufficientDataError(
            'too few years',
            'need at least {0} years, got {1}'.format(MIN_YEARS, years.size))

    first, last = int(years.min()), int(years.max())
    gaps = sorted(set(range(first, last + 1)) - set(int(y) for y in years))
    if gaps:
        raise DataError('gap in annual series',
                        'no usable records for {0}'.format(
                            ', '.join(str(y) for y in gaps)))

    logger.debug('annualize: %d records into %d-%d',
                 len(records), first, last)

    return AnnualSeries(first, means.loc[first:last].to_numpy(),
                        label=policy.label, unit=policy.unit)


def load_series(path, schema='plain', label=None, unit=''):
    """Read a file and annualize it.

    Args:
        path (str): the file to read
        schema (str or ColumnSchema): the column layout
        label (str): the series label, defaults to the file name stem
        unit (str): an opaque unit string

    Returns:
        :class:`.AnnualSeries`

    Raises:
        :class:`.ParameterError` if the file cannot be read,
        :class:`.DataError`

    """

    try:
        with open(path, 'rb') as f:
            data = f.read()
    except OSError as e:
        raise ParameterError('unable to read "{0}"'.format(path), str(e))

    if label is None:
        label = str(path).replace('\\', '/').rsplit('/', 1)[-1]
        label = label.rsplit('.', 1)[0]

    return annualize(parse_csv(data, schema), MeanPolicy(label, unit))


__all__ = [
    'MIN_YEARS',
    'RawRecord',
    'ColumnSchema',
    'SCHEMAS',
    'schema_for',
    'MeanPolicy',
    'AnnualSeries',
    'parse_csv',
    'annualize',
    'load_series',
]
