use std::fs;
use std::io::{ErrorKind, Read};
use std::path::{Path, PathBuf};

use sentimeter_core::report::Table;

use crate::Failure;

/// Tables go to `dir` as CSV and Markdown, or to stdout as Markdown.
pub struct Output {
    dir: Option<PathBuf>,
}

impl Output {
    pub fn new(dir: Option<PathBuf>) -> Result<Self, Failure> {
        if let Some(dir) = &dir {
            fs::create_dir_all(dir).map_err(|e| write_failure(dir, e))?;
        }
        Ok(Output { dir })
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn table(&self, stem: &str, title: &str, table: &Table) -> Result<(), Failure> {
        match &self.dir {
            Some(dir) => {
                write_file(&dir.join(format!("{stem}.csv")), &table.to_csv()?)?;
                write_file(&dir.join(format!("{stem}.md")), &format!("## {title}\n\n{}", table.to_markdown()))
            }
            None => {
                println!("## {title}\n\n{}", table.to_markdown());
                Ok(())
            }
        }
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| write_failure(path, e))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn write_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Internal(format!("cannot write {}: {e}", path.display()))
}

/// Reads a user-supplied file; `-` is stdin.
pub fn read_input(path: &Path) -> Result<String, Failure> {
    let result = if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map(|_| text)
    } else {
        fs::read_to_string(path)
    };
    result.map_err(|e| {
        let message = format!("cannot read {}: {e}", path.display());
        match e.kind() {
            ErrorKind::NotFound | ErrorKind::PermissionDenied | ErrorKind::InvalidData | ErrorKind::IsADirectory => {
                Failure::Input(message)
            }
            _ => Failure::Internal(message),
        }
    })
}
