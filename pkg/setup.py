"""Setup script for source-loc."""

from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="source-loc",
    version="0.1.0",
    author="source-loc developers",
    description="Diffusion source localization on graphs: simulators, detectors and a benchmark CLI",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Information Analysis",
    ],
    python_requires=">=3.8",
    install_requires=[
        "numpy>=1.20",
        "scipy>=1.7",
        "joblib>=1.0",
        "rich>=13.0.0",
    ],
    extras_require={
        "test": ["networkx>=2.6", "coverage>=6.0.0"],
    },
    entry_points={
        "console_scripts": [
            "source-loc=source_loc.main:main",
        ],
    },
)
