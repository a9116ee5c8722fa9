from setuptools import setup, find_packages

setup(
    name="toric-lab",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "tests.*"]),
    python_requires=">=3.10",
    install_requires=[
        # Exact arithmetic
        "sympy>=1.12",
        "pycddlib>=2.1,<3",
        # Sampling oracle & tables
        "numpy>=1.24.0",
        "pandas>=2.0.0",
        # Configuration
        "omegaconf>=2.3.0",
        "pyyaml>=6.0",
        # CLI & utilities
        "click>=8.1.0",
        "tqdm>=4.66.0",
        "rich>=13.0.0",
    ],
    extras_require={
        "test": [
            "pytest>=7.4.0",
            "hypothesis>=6.90.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "toriclab=scripts.run_lab:main",
        ],
    },
)
