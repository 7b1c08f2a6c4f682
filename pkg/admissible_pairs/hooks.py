app_name = "admissible_pairs"
app_title = "Admissible Pairs"
app_publisher = "Standard Resolution Developers"
app_description = "Standard resolution of semistable sheaves on P2 into admissible semistable pairs"
app_email = "dev@admissible-pairs.org"
app_license = "MIT"

# Commands
# --------
# Dotted paths resolved by the command line front end

commands = {
	"resolve": "admissible_pairs.standard_resolution.cli.cli.run_resolve",
	"resolve-family": "admissible_pairs.standard_resolution.cli.cli.run_resolve_family",
	"flatcheck": "admissible_pairs.standard_resolution.cli.cli.run_flatcheck",
	"lemma2": "admissible_pairs.standard_resolution.cli.cli.run_lemma2",
	"blowup": "admissible_pairs.standard_resolution.cli.cli.run_blowup",
	"hilbert": "admissible_pairs.standard_resolution.cli.cli.run_hilbert",
	"semistable": "admissible_pairs.standard_resolution.cli.cli.run_semistable",
}

# Gates
# -----
# Total order of the resolution gates; a failure at one stage keeps the
# certificates of every earlier stage in the trace

gate_order = [
	"lemma1",
	"resolution",
	"fitting",
	"blowup",
	"kernel_dual",
	"flatness",
	"quasi_ideality",
	"chi_identity",
]

# Settings
# --------

settings_schema = "admissible_pairs/config/resolution_settings.json"
settings_env_var = "ADMISSIBLE_PAIRS_CAPS"
