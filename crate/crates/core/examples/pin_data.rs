//! Regenerates the pinned reconstructions in `data/`.
use cyclotome::catalog::{file_name, pinned_text, reconstruct_all};
use cyclotome::par::Jobs;

fn main() -> cyclotome::Result<()> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    for (name, g) in reconstruct_all(Jobs::all())? {
        let file = file_name(&name).expect("pinned name");
        std::fs::write(dir.join(file), pinned_text(&name, &g))?;
        println!("{file}");
    }
    Ok(())
}
