"""Physical constants (CODATA exact or recommended values)."""

#: reduced Planck constant times speed of light, eV nm
HBAR_C = 197.3269804

#: 1 eV/nm^3 expressed in Pa
EV_PER_NM3_IN_PA = 1.602176634e8
