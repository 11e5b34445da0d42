//! Read timestamped XML, normalize times, and write it back with integer
//! times.
//!
//!     cargo run --example xml_round_trip

use mmambig::io::{read_sentence_xml, write_sentence_xml};

const INPUT: &str = r#"<?xml version="1.0"?>
<input>
  <nminput mod="speech" repr="find" ts="2024-03-01 09:00:10" te="2024-03-01 09:00:12" conc="find"/>
  <nminput mod="sketch" repr="circle" ts="2024-03-01 09:00:13" te="2024-03-01 09:00:16" conc="lake"/>
  <nlsentence sent="find lake"/>
</input>"#;

fn main() -> mmambig::Result<()> {
    let raw = read_sentence_xml(INPUT)?;
    for e in &raw.entries {
        println!("{} {:?} {} {}", e.modality, e.repr, e.time, e.concept);
    }
    let out = write_sentence_xml(&raw);
    print!("{out}");
    assert_eq!(read_sentence_xml(&out)?, raw);
    Ok(())
}
