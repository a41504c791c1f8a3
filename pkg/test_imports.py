"""
Test script to verify all required packages are installed correctly.
Run this after installing requirements.txt to ensure everything works.
"""
import sys


def test_imports():
    """Test all critical imports"""
    errors = []

    print("Testing imports...")
    print("=" * 50)

    # Exact algebra
    try:
        import sympy
        print(f"✅ sympy version: {sympy.__version__}")
    except ImportError as e:
        errors.append(f"❌ sympy: {e}")

    # Multiprecision numerics
    try:
        import mpmath
        print(f"✅ mpmath version: {mpmath.__version__}")
    except ImportError as e:
        errors.append(f"❌ mpmath: {e}")

    # Configuration
    try:
        import yaml
        print(f"✅ pyyaml imported successfully")
    except ImportError as e:
        errors.append(f"❌ pyyaml: {e}")

    try:
        import pydantic
        print(f"✅ pydantic version: {pydantic.VERSION}")
    except ImportError as e:
        errors.append(f"❌ pydantic: {e}")

    try:
        from dotenv import load_dotenv
        print(f"✅ python-dotenv imported successfully")
    except ImportError as e:
        errors.append(f"❌ python-dotenv: {e}")

    # Development
    try:
        import pytest
        print(f"✅ pytest imported successfully")
    except ImportError as e:
        errors.append(f"❌ pytest: {e}")

    # Toolkit modules
    try:
        import chowcheck
        from src.backend import __version__
        print(f"✅ chowcheck {__version__} imported successfully")
    except ImportError as e:
        errors.append(f"❌ chowcheck: {e}")

    print("=" * 50)

    if errors:
        print("\n⚠️  Some imports failed:")
        for error in errors:
            print(f"   {error}")
        print("\nPlease install missing packages:")
        print("   pip install -r requirements.txt")

    assert not errors, errors
    print("\n✅ All imports successful!")


if __name__ == "__main__":
    try:
        test_imports()
    except AssertionError:
        sys.exit(1)
    sys.exit(0)
