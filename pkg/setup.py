# setup.py
from setuptools import setup, find_packages

# Read the README file
with open("README.md", "r", encoding="utf-8") as f:
    long_description = f.read()

setup(
    name="kuniform",
    version="0.1.0",
    description="Construction and certification of k-uniform graph states",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    py_modules=["k_uniform"],
    include_package_data=True,
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires='>=3.10',
    install_requires=[
        "numpy>=2.0",
        "pandas>=2.0",
        "tqdm>=4.66",
        "networkx>=3.0",
        "galois>=0.4",
    ],
    extras_require={
        "dev": [
            "pytest",
            "flake8",
        ]
    },
    entry_points={
        "console_scripts": [
            "k-uniform=k_uniform:main",
        ]
    },
)
