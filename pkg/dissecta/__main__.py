from dissecta.main import run

run()
