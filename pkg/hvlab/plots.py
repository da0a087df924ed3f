"""Line plots of experiment tables.

SVG export needs `kaleido`; without it the figure is written as a
standalone HTML file instead.
"""
import logging
import os

import plotly.graph_objs as go

from . import labels


logger = logging.getLogger(__name__)


AXIS_LAYOUT = {

  labels.N: dict(
    title=dict(text='n'),
    type='log',
  ),

  labels.DEGREE: dict(
    title=dict(text='polynomial degree N'),
    type='log',
  ),

  labels.DEPTH: dict(
    title=dict(text='dyadic depth'),
    dtick=1,
  ),

  labels.RADIUS: dict(
    title=dict(text='r'),
    range=[0, 1],
  ),

  labels.NORM: dict(
    type='log',
    exponentformat='power',
    hoverformat='.6g',
  ),

  labels.RESIDUAL: dict(
    type='log',
    exponentformat='power',
    hoverformat='.6g',
  ),

  labels.RATIO: dict(
    hoverformat='.4f',
    zeroline=True,
    zerolinewidth=1,
    zerolinecolor='black',
  ),

}


FIG_LAYOUT = dict(
  height=420,
  width=640,
  margin=dict(l=60, r=20, t=40, b=50),
  legend=dict(yanchor='top', y=0.99, xanchor='right', x=0.99),
  template='plotly_white',
)


class Plotter(object):
  """Builds one line figure from a DataFrame."""

  def __init__(self, df, title=None):
    self.df = df
    self.title = title
    self._x_label = None
    self._y_labels = []

  def set_x_column(self, label):
    if label not in self.df.columns:
      raise KeyError(f'There is no column `{label}` in the table.')
    self._x_label = label

  def add_line(self, label):
    if label not in self.df.columns:
      raise KeyError(f'There is no column `{label}` in the table.')
    self._y_labels.append(label)

  @property
  def x_column(self):
    return self._x_label or self.df.columns[0]

  def figure(self):
    fig = go.Figure(layout=FIG_LAYOUT)
    x = self.df[self.x_column]
    y_labels = self._y_labels or [
      c for c in self.df.columns
      if c != self.x_column and self.df[c].dtype.kind in 'fi'
    ]
    for label in y_labels:
      fig.add_trace(go.Scatter(
        x=x, y=self.df[label], name=label, mode='lines+markers',
      ))

    fig.update_xaxes(**AXIS_LAYOUT.get(self.x_column, {}))
    if y_labels:
      fig.update_yaxes(**AXIS_LAYOUT.get(y_labels[0], {}))
    if self.title:
      fig.update_layout(title=dict(text=self.title))
    return fig

  def write(self, path):
    """Write SVG to `path`, or HTML beside it when export is unavailable.

    Returns:
      str: the path actually written.
    """
    fig = self.figure()
    try:
      fig.write_image(path, format='svg')
      return path
    except (ValueError, ImportError, RuntimeError) as e:
      html_path = os.path.splitext(path)[0] + '.html'
      logger.warning('SVG export unavailable (%s); writing %s', e, html_path)
      fig.write_html(html_path, include_plotlyjs='cdn', full_html=True)
      return html_path


def plot_table(df, path, x=None, y=None, title=None):
  """Line plot of columns `y` (default: all numeric) against `x`."""
  plotter = Plotter(df, title)
  if x is not None:
    plotter.set_x_column(x)
  for label in y or ():
    plotter.add_line(label)
  return plotter.write(path)
