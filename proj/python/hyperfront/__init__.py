"""Front-tracking laboratory for the scaled 2D potential-flow system and its
hypersonic small-disturbance limit."""

from ._hyperfront import *  # noqa: F401,F403
