"""Setup script for hcfsim package."""

from setuptools import setup

setup(install_requires=["rich", "numpy", "scipy"])
