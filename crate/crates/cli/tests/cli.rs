mod contract;

#[test]
fn corpus_list_and_export_round_trip() {
    contract::corpus_list_and_export_round_trip();
}

#[test]
fn checks_and_exit_codes() {
    contract::checks_and_exit_codes();
}

#[test]
fn invalid_carrier_fails_validation() {
    contract::invalid_carrier_fails_validation();
}

#[test]
fn eval_reports_elements() {
    contract::eval_reports_elements();
}

#[test]
fn tensor_compose_and_iso() {
    contract::tensor_compose_and_iso();
}

#[test]
fn oracle_subcommands() {
    contract::oracle_subcommands();
}
