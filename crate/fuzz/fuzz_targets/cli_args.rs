//! NUL-separated argument vectors. Only subcommands that do not touch the
//! filesystem are run.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let args: Vec<&str> = s.split('\0').collect();
    if !matches!(args.first(), Some(&"eval") | Some(&"compare")) || args.len() > 16 {
        return;
    }
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = sinebound_cli::run(std::iter::once("sinebound").chain(args), &mut out, &mut err);
    assert!(code == 0 || code == 3, "exit {code}");
    if code == 3 {
        assert_eq!(String::from_utf8(err).unwrap().lines().count(), 1);
    }
});
