//! Session language, command dispatch and report rendering.
//!
//! ```text
//! session := stmt*
//! stmt    := ring | base | order | ideal | point | prime
//! ring    := "ring" field "[" vars "]" "[" vars "]" ";"
//! field   := "Q" | "Fp" [ "(" int ")" ] | "Z" | "Zmod" "(" int ")"
//! base    := "base" "(" polys ")" ";"
//! order   := "order" block ("," block)* ";"
//! block   := ("lex" | "grlex" | "grevlex") "(" vars ")"
//! ideal   := "ideal" name "=" "(" polys ")" ";"
//! point   := "point" name ":" var "=" value ("," var "=" value)* ";"
//! prime   := "prime" name "=" "(" polys ")" ";"
//! ```
//!
//! The first bracket lists parameters, the second the main variables.
//! `base` and `order` must precede every `ideal`, `point` and `prime`.
//! Without `order`, both blocks are lex in declaration order.

mod command;
mod report;
mod session;

pub use command::{execute_command, Command, CommandArgs};
pub use report::{
    format_list, Cell, Format, InitialTerm, LocusPart, MonoCell, QuotientEntry, Report,
    VerdictEntry, WitnessReport,
};
pub use session::{
    parse_assignment, parse_param_list, parse_param_poly, parse_session, parse_session_with,
    NamedIdeal, ParseOptions, Session, SessionRing,
};
