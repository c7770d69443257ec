//! Writers for text, CSV, PNG and SVG outputs. Each file starts with (or embeds) a header that
//! names the command and lists the full resolved configuration.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};

pub const PNG_KEYWORD: &str = "quadtess-config";

#[derive(Clone, Debug, PartialEq)]
pub struct Header {
    pub command: String,
    /// `key = value` lines
    pub config: String,
}

impl Header {
    pub fn new(command: &str, config: String) -> Header {
        Header { command: command.to_string(), config }
    }

    pub fn text(&self) -> String {
        format!("quadtess {}\ncommand = {}\n{}", env!("CARGO_PKG_VERSION"), self.command, self.config)
    }

    /// The header with every line behind `prefix`.
    pub fn commented(&self, prefix: &str) -> String {
        self.text().lines().map(|l| format!("{prefix}{l}\n")).collect()
    }
}

fn io(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(std::io::stdout()),
    })
}

/// Structured text report; `None` writes to stdout.
pub fn write_text(path: Option<&Path>, header: &Header, body: &str) -> Result<()> {
    let mut w = sink(path)?;
    w.write_all(header.commented("# ").as_bytes())?;
    w.write_all(body.as_bytes())?;
    w.flush()?;
    Ok(())
}

pub fn write_csv(path: Option<&Path>, header: &Header, columns: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = sink(path)?;
    w.write_all(header.commented("# ").as_bytes())?;
    let mut cw = csv::Writer::from_writer(w);
    cw.write_record(columns).map_err(io)?;
    for r in rows {
        cw.write_record(r).map_err(io)?;
    }
    cw.flush()?;
    Ok(())
}

/// 8-bit RGB image with the header in a tEXt chunk.
pub fn write_png(path: &Path, header: &Header, width: usize, height: usize, rgb: &[u8]) -> Result<()> {
    let w = BufWriter::new(File::create(path)?);
    let mut enc = png::Encoder::new(w, width as u32, height as u32);
    enc.set_color(png::ColorType::Rgb);
    enc.set_depth(png::BitDepth::Eight);
    enc.add_text_chunk(PNG_KEYWORD.to_string(), header.text()).map_err(io)?;
    let mut wr = enc.write_header().map_err(io)?;
    wr.write_image_data(rgb).map_err(io)?;
    wr.finish().map_err(io)?;
    Ok(())
}

/// The header text stored in a PNG written by `write_png`.
pub fn read_png_header(path: &Path) -> Result<Option<String>> {
    let dec = png::Decoder::new(File::open(path)?);
    let reader = dec.read_info().map_err(io)?;
    Ok(reader.info().uncompressed_latin1_text.iter().find(|t| t.keyword == PNG_KEYWORD).map(|t| t.text.clone()))
}

pub fn write_svg(path: Option<&Path>, header: &Header, width: usize, height: usize, body: &str) -> Result<()> {
    let mut w = sink(path)?;
    // "--" may not appear inside an XML comment
    let meta = header.text().replace("--", "- -");
    write!(
        w,
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!--\n{meta}-->\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{body}</svg>\n"
    )?;
    w.flush()?;
    Ok(())
}
