import pandas as pd
import plotly.graph_objs as go
import pytest

from hvlab import labels, plots


@pytest.fixture
def table():
  return pd.DataFrame({
    labels.N: [1, 2, 4, 8],
    labels.NORM: [1.0, 0.5, 0.25, 0.125],
    labels.STATUS: ['converged'] * 4,
  })


def test_figure_plots_numeric_columns(table):
  fig = plots.Plotter(table, title='decay').figure()
  assert [trace.name for trace in fig.data] == [labels.NORM]
  assert fig.layout.xaxis.type == 'log'
  assert fig.layout.title.text == 'decay'


def test_unknown_column(table):
  plotter = plots.Plotter(table)
  with pytest.raises(KeyError):
    plotter.set_x_column('missing')
  with pytest.raises(KeyError):
    plotter.add_line('missing')


def test_html_fallback_without_svg_export(table, tmp_path, monkeypatch):
  def no_export(self, *args, **kwargs):
    raise ValueError('kaleido is not installed')

  monkeypatch.setattr(go.Figure, 'write_image', no_export)
  path = plots.plot_table(table, str(tmp_path / 'decay.svg'), x=labels.N)
  assert path == str(tmp_path / 'decay.html')
  assert (tmp_path / 'decay.html').exists()
