# setup.py
from setuptools import setup, find_packages

setup(
    name="subkit",
    version="1.0.0",
    description="Subtitle segmentation, timing and evaluation for speech translation",
    packages=find_packages(exclude=["examples", "examples.*"]),
    install_requires=[
        "pydantic>=2.5.3",
        "pydantic-settings>=2.1.0",
        "python-dotenv>=0.19.0",
        "numpy<2.0.0",
        "python-json-logger>=2.0.7",
        "sacrebleu>=2.3.1",
        "editdistance>=0.6.2",
    ],
    entry_points={
        "console_scripts": [
            "subkit=subkit.cli.main:main",
        ],
    },
    python_requires=">=3.10",
)
