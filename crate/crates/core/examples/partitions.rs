//! Indiscernibility and relative partitions of each attribute.
//!
//! `cargo run --example partitions`

use rredux::datasets::sample;
use rredux::{ind_partition, refines, relative_partition};

fn main() -> rredux::Result<()> {
    let table = sample();
    let ids = table.object_ids();
    println!(
        "U/{} = {:?}",
        table.decision_attr(),
        ind_partition(&table, &[table.decision_attr()])?.labelled(ids)
    );
    for attr in table.condition_attrs() {
        let plain = ind_partition(&table, &[attr])?;
        let relative = relative_partition(&table, attr)?;
        println!("U/{attr}  = {:?}", plain.labelled(ids));
        println!("UD/{attr} = {:?}", relative.labelled(ids));
        println!(
            "  UD/{attr} refines U/{attr}: {}",
            refines(&relative, &plain)?
        );
    }
    Ok(())
}
