"""Ball arithmetic, certified root isolation and the 22-point certificate."""
from .ball import ComplexBall, horner, horner_with_derivative
from .certificate import (
    Certificate,
    CertificateError,
    CertPoint,
    VerificationReport,
    build_certificate,
    common_v_roots,
    perturbed,
    verify_certificate,
)
from .roots import RootIsolationError, roots_univariate

__all__ = [
    "ComplexBall", "horner", "horner_with_derivative", "Certificate", "CertificateError", "CertPoint",
    "VerificationReport", "build_certificate", "common_v_roots", "perturbed", "verify_certificate",
    "RootIsolationError", "roots_univariate",
]
