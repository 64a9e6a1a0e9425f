"""Publication-style figures from tdse1d run directories."""

from .plots import FIGURE_IDS, FigureError, FigureJob, render

__version__ = "0.1.0"
