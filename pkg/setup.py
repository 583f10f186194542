from setuptools import setup, find_packages

setup(
    name="ResidueForge",
    version="0.1.0",
    package_dir={"": "src"},
    packages=find_packages(where="src"),
    python_requires=">=3.8, <4",
    install_requires=["numpy", "scipy", "sympy"],
    extras_require={
        "test": ["hypothesis"],
    },
    entry_points={
        "console_scripts": ["residue-forge = ResidueForge.cli:main"],
    },
)
