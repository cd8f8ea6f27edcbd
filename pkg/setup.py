from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="soa-threat-toolkit",
    version="0.1.0",
    author="SOA Threat Toolkit Team",
    author_email="info@example.com",
    description="Threat analysis and attack path enumeration for service-oriented vehicle architectures",
    long_description=long_description,
    long_description_content_type="text/markdown",
    url="https://github.com/yourusername/soa-threat-toolkit",
    package_dir={"": "src"},
    packages=find_packages(where="src"),
    package_data={"soa_threat_toolkit": ["fixtures/*.json"]},
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Developers",
        "Topic :: Security",
    ],
    python_requires=">=3.8",
    install_requires=[
        "adaptive-cards-py>=0.2.4,<0.3",
        "requests>=2.25.0",
        "networkx>=2.6",
        "pydantic>=2.0",
        "structlog>=21.1.0",
    ],
    extras_require={
        "dev": [
            "pytest>=6.0.0",
            "black>=21.5b2",
            "isort>=5.9.1",
            "flake8>=3.9.2",
            "mypy>=0.812",
            "pytest-cov>=2.12.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "soa-threat=soa_threat_toolkit.cli:main",
        ],
    },
)
