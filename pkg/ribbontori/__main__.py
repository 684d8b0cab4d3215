# __main__.py
# Permite rularea cu: python -m ribbontori <comanda> ...

from .app import main

main()
