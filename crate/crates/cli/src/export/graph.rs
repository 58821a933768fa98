use ionphot::Netlist;

/// Pretty JSON with one record per node and edge. Parses back with
/// [`read_graph`] into an identical netlist.
pub fn write_graph(netlist: &Netlist<f64>) -> serde_json::Result<String> {
    let mut s = serde_json::to_string_pretty(netlist)?;
    s.push('\n');
    Ok(s)
}

pub fn read_graph(text: &str) -> serde_json::Result<Netlist<f64>> {
    serde_json::from_str(text)
}
