//! JPEG-like block compression: forward transform, luminance quantization
//! with the scaling diagonal merged into the table, full inverse transform,
//! and PSNR / zero-count / energy-compaction metrics.

mod quant;

pub use quant::{quantize_value, QuantTable, JPEG_LUMINANCE};

use std::fmt::Write as _;
use std::thread;

use crate::error::{Error, Result};
use crate::imageio::GrayImage;
use crate::kernels::{self, Family, TransformSpec};
use crate::zonal2d::{self, Block8};

/// Which transform to use and how.
#[derive(Debug, Clone, PartialEq)]
pub struct CodecConfig {
    pub family: Family,
    pub pruned: bool,
    /// Subtract 128 before the forward transform and add it back after.
    pub level_shift: bool,
    pub quant: QuantTable,
}

impl CodecConfig {
    /// Configuration for a registry name. `pruned` as a name always selects
    /// the pruned modified RDCT.
    pub fn new(name: &str, pruned: bool) -> Result<Self> {
        let spec = kernels::lookup(name)?;
        Ok(CodecConfig {
            family: spec.family(),
            pruned: pruned || spec.is_pruned(),
            level_shift: false,
            quant: QuantTable::jpeg_luminance(),
        })
    }

    pub fn with_level_shift(mut self, on: bool) -> Self {
        self.level_shift = on;
        self
    }

    pub fn with_quant(mut self, quant: QuantTable) -> Self {
        self.quant = quant;
        self
    }
}

/// Quantized coefficients and the reconstruction of one block.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockResult {
    pub quantized: [[i32; 8]; 8],
    pub reconstructed: Block8,
}

impl BlockResult {
    pub fn zeros(&self) -> usize {
        self.quantized.iter().flatten().filter(|&&q| q == 0).count()
    }
}

/// A configuration with its transforms and merged table prepared.
#[derive(Debug, Clone)]
pub struct Codec {
    config: CodecConfig,
    full: TransformSpec,
    forward: TransformSpec,
    merged: [[f64; 8]; 8],
}

impl Codec {
    pub fn new(config: CodecConfig) -> Self {
        let full = config.family.build();
        let forward = if config.pruned { full.pruned() } else { full.clone() };
        let merged = config.quant.merged(&forward);
        Codec { config, full, forward, merged }
    }

    pub fn config(&self) -> &CodecConfig {
        &self.config
    }

    /// Quantizes, dequantizes and reconstructs one block of pixel values.
    pub fn compress_block(&self, a: &Block8) -> BlockResult {
        let shift = if self.config.level_shift { 128.0 } else { 0.0 };
        let quantized = self.quantize(a, shift);

        let n = self.forward.rows();
        let mut coeffs = [[0.0; 8]; 8];
        for i in 0..n {
            for j in 0..n {
                coeffs[i][j] = quantized[i][j] as f64 * self.config.quant.step(i, j) as f64;
            }
        }
        // full inverse; pruned positions are zero
        let mut rec = zonal2d::synthesize(&self.full, &coeffs);
        for v in rec.iter_mut().flatten() {
            *v = (*v + shift).clamp(0.0, 255.0);
        }
        BlockResult { quantized, reconstructed: rec }
    }

    fn quantize(&self, a: &Block8, shift: f64) -> [[i32; 8]; 8] {
        let shifted: Block8 = a.map(|row| row.map(|v| v - shift));
        if self.forward.is_integer() && shifted.iter().flatten().all(|v| v.fract() == 0.0) {
            quantize_merged(&self.forward, &shifted, &self.merged)
        } else {
            quantize_scaled(&self.forward, &shifted, &self.config.quant)
        }
    }
}

/// Quantization by the book: `D`-scaled coefficients divided by `Q`.
pub fn quantize_scaled(spec: &TransformSpec, a: &Block8, quant: &QuantTable) -> [[i32; 8]; 8] {
    let (b, _) = zonal2d::forward_2d(spec, a, true);
    let n = spec.rows();
    let mut out = [[0; 8]; 8];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = quantize_value(b.get(i, j), quant.step(i, j) as f64);
        }
    }
    out
}

/// Quantization with the scaling merged into the table: exact integer
/// coefficients divided by `q / (d_i·d_j)`. `a` must hold integers and
/// `spec` must be an integer transform.
pub fn quantize_merged(spec: &TransformSpec, a: &Block8, merged: &[[f64; 8]; 8]) -> [[i32; 8]; 8] {
    let ai: [[i64; 8]; 8] = a.map(|row| row.map(|v| v as i64));
    let (y, _) = zonal2d::forward_2d_integer(spec, &ai).expect("integer transform");
    let n = spec.rows();
    let mut out = [[0; 8]; 8];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = quantize_value(y[i][j] as f64, merged[i][j]);
        }
    }
    out
}

/// One-shot form of [`Codec::compress_block`].
pub fn compress_block(a: &Block8, cfg: &CodecConfig) -> BlockResult {
    Codec::new(cfg.clone()).compress_block(a)
}

/// Image-level quality and sparsity metrics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImageMetrics {
    /// `+∞` when the reconstruction is identical to the original.
    pub psnr_db: f64,
    /// Percentage of zero quantized coefficients over all 64 positions of
    /// every block, forced pruned zeros included.
    pub nz_pct: f64,
    /// Energy-weighted low-frequency fraction; `None` for an image with no
    /// energy at all.
    pub energy_compaction: Option<f64>,
}

/// `10·log10(255² / MSE)`.
pub fn psnr(original: &[u8], reconstructed: &[u8]) -> f64 {
    assert_eq!(original.len(), reconstructed.len());
    let sse: f64 = original
        .iter()
        .zip(reconstructed)
        .map(|(&a, &b)| (a as f64 - b as f64).powi(2))
        .sum();
    let mse = sse / original.len() as f64;
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (255.0f64 * 255.0 / mse).log10()
    }
}

impl Codec {
    /// Compresses a whole image block by block. Dimensions that are not
    /// multiples of 8 are padded by edge replication; PSNR covers the
    /// original extent only.
    pub fn compress_image(&self, img: &GrayImage) -> Result<(GrayImage, ImageMetrics)> {
        if img.samples().is_empty() {
            return Err(Error::EmptyImage);
        }
        if img.maxval() != 255 {
            return Err(Error::UnsupportedDepth(img.maxval() as u16));
        }
        let blocks = img.blocks();
        let mut zeros = 0usize;
        let recon: Vec<Block8> = blocks
            .iter()
            .map(|b| {
                let r = self.compress_block(b);
                zeros += r.zeros();
                r.reconstructed
            })
            .collect();
        let out = GrayImage::from_blocks(img.width(), img.height(), &recon)?;
        let energy_compaction = match zonal2d::image_compaction(&self.full, &blocks) {
            Ok(c) => Some(c.weighted),
            Err(Error::ZeroEnergy) => None,
            Err(e) => return Err(e),
        };
        let metrics = ImageMetrics {
            psnr_db: psnr(img.samples(), out.samples()),
            nz_pct: 100.0 * zeros as f64 / (64 * blocks.len()) as f64,
            energy_compaction,
        };
        Ok((out, metrics))
    }
}

pub fn compress_image(img: &GrayImage, cfg: &CodecConfig) -> Result<(GrayImage, ImageMetrics)> {
    Codec::new(cfg.clone()).compress_image(img)
}

/// One line of a metrics table.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRow {
    pub transform: &'static str,
    pub pruned: bool,
    pub image: String,
    pub metrics: ImageMetrics,
}

/// Per-image rows and per-configuration means.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusReport {
    /// Sorted by (image, transform, pruned).
    pub rows: Vec<MetricsRow>,
    /// One row per configuration, in the order given, with image `mean`.
    pub averages: Vec<MetricsRow>,
}

/// Image label used for averaged rows.
pub const MEAN_LABEL: &str = "mean";

/// Runs every configuration on every image and averages PSNR, NZ and energy
/// compaction per configuration. Images are processed in parallel; results
/// are reduced in a fixed order.
pub fn corpus_average(images: &[(String, GrayImage)], configs: &[CodecConfig]) -> Result<CorpusReport> {
    if images.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    if configs.is_empty() {
        return Err(Error::InvalidArgument("no codec configurations".into()));
    }
    let codecs: Vec<Codec> = configs.iter().cloned().map(Codec::new).collect();

    let per_image: Vec<Result<Vec<ImageMetrics>>> = thread::scope(|s| {
        let handles: Vec<_> = images
            .iter()
            .map(|(_, img)| {
                let codecs = &codecs;
                s.spawn(move || {
                    codecs.iter().map(|c| c.compress_image(img).map(|(_, m)| m)).collect()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("codec worker panicked")).collect()
    });

    let mut rows = Vec::with_capacity(images.len() * configs.len());
    for ((name, _), metrics) in images.iter().zip(per_image) {
        for (cfg, m) in configs.iter().zip(metrics?) {
            rows.push(MetricsRow { transform: cfg.family.name(), pruned: cfg.pruned, image: name.clone(), metrics: m });
        }
    }

    let averages = configs
        .iter()
        .enumerate()
        .map(|(k, cfg)| {
            let ms: Vec<&ImageMetrics> = rows.iter().skip(k).step_by(configs.len()).map(|r| &r.metrics).collect();
            let n = ms.len() as f64;
            let ecs: Vec<f64> = ms.iter().filter_map(|m| m.energy_compaction).collect();
            MetricsRow {
                transform: cfg.family.name(),
                pruned: cfg.pruned,
                image: MEAN_LABEL.to_string(),
                metrics: ImageMetrics {
                    psnr_db: ms.iter().map(|m| m.psnr_db).sum::<f64>() / n,
                    nz_pct: ms.iter().map(|m| m.nz_pct).sum::<f64>() / n,
                    energy_compaction: (!ecs.is_empty()).then(|| ecs.iter().sum::<f64>() / ecs.len() as f64),
                },
            }
        })
        .collect();

    rows.sort_by(|a, b| (&a.image, a.transform, a.pruned).cmp(&(&b.image, b.transform, b.pruned)));
    Ok(CorpusReport { rows, averages })
}

/// Header of the metrics CSV.
pub const METRICS_CSV_HEADER: &str = "transform,pruned,image,psnr_db,nz_pct,energy_compaction";

/// Fixed 4-decimal formatting; infinities print as `inf`, missing values
/// as `nan`.
pub fn fixed4(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v:.4}")
    }
}

pub fn metrics_csv_line(row: &MetricsRow) -> String {
    format!(
        "{},{},{},{},{},{}",
        row.transform,
        row.pruned,
        row.image,
        fixed4(row.metrics.psnr_db),
        fixed4(row.metrics.nz_pct),
        fixed4(row.metrics.energy_compaction.unwrap_or(f64::NAN)),
    )
}

/// Header plus one line per row.
pub fn metrics_csv<'a>(rows: impl IntoIterator<Item = &'a MetricsRow>) -> String {
    let mut out = String::from(METRICS_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{}", metrics_csv_line(r));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imageio::{synth_image, SynthKind};

    fn cfg(name: &str, pruned: bool) -> CodecConfig {
        CodecConfig::new(name, pruned).unwrap()
    }

    // Oracle: the pipeline written out longhand against the direct matrix.
    fn longhand(a: &Block8, spec: &TransformSpec, q: &QuantTable) -> Block8 {
        let c = spec.analysis();
        let mut rec = [[0.0; 8]; 8];
        let mut deq = [[0.0; 8]; 8];
        for k in 0..8 {
            for l in 0..8 {
                let mut b = 0.0;
                for i in 0..8 {
                    for j in 0..8 {
                        b += c[k][i] * a[i][j] * c[l][j];
                    }
                }
                deq[k][l] = (b / q.step(k, l) as f64).round() * q.step(k, l) as f64;
            }
        }
        for i in 0..8 {
            for j in 0..8 {
                let mut v = 0.0;
                for k in 0..8 {
                    for l in 0..8 {
                        v += c[k][i] * deq[k][l] * c[l][j];
                    }
                }
                rec[i][j] = v.clamp(0.0, 255.0);
            }
        }
        rec
    }

    #[test]
    fn constant_block_survives_exact_dct() {
        let a = [[128.0; 8]; 8];
        let c = cfg("exact-dct", false);
        let r = compress_block(&a, &c);
        assert_eq!(r.quantized[0][0], 64);
        assert_eq!(r.zeros(), 63);
        let oracle = longhand(&a, &c.family.build(), &c.quant);
        for (x, y) in r.reconstructed.iter().flatten().zip(oracle.iter().flatten()) {
            assert!((x - 128.0).abs() < 1e-9);
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn pipeline_matches_longhand_oracle() {
        let img = synth_image(SynthKind::Noise(5), 8, 8).unwrap();
        let a = img.blocks()[0];
        for name in ["exact-dct", "modified-rdct", "rdct"] {
            let c = cfg(name, false);
            let r = compress_block(&a, &c);
            let oracle = longhand(&a, &c.family.build(), &c.quant);
            for (x, y) in r.reconstructed.iter().flatten().zip(oracle.iter().flatten()) {
                assert!((x - y).abs() < 1e-9, "{name}");
            }
        }
    }

    #[test]
    fn zero_block_stays_zero() {
        for name in kernels::REGISTRY_NAMES {
            let r = compress_block(&[[0.0; 8]; 8], &cfg(name, false));
            assert_eq!(r.zeros(), 64);
            assert!(r.reconstructed.iter().flatten().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn pruned_forces_48_zeros() {
        let img = synth_image(SynthKind::Noise(9), 64, 64).unwrap();
        let codec = Codec::new(cfg("modified-rdct", true).with_quant(QuantTable::uniform(1).unwrap()));
        for b in img.blocks() {
            let r = codec.compress_block(&b);
            assert!(r.zeros() >= 48);
            for i in 0..8 {
                for j in 0..8 {
                    if i >= 4 || j >= 4 {
                        assert_eq!(r.quantized[i][j], 0);
                    }
                }
            }
        }
    }

    #[test]
    fn pruned_name_implies_pruned_mode() {
        let c = cfg("pruned", false);
        assert!(c.pruned);
        assert_eq!(c.family, Family::ModifiedRdct);
    }

    #[test]
    fn psnr_closed_form() {
        let a = vec![10u8; 64];
        let b = vec![11u8; 64];
        assert!((psnr(&a, &b) - 48.1308).abs() < 1e-4);
        assert!((psnr(&a, &b) - 10.0 * 65025f64.log10()).abs() < 1e-12);
        assert_eq!(psnr(&a, &a), f64::INFINITY);
    }

    #[test]
    fn quantization_off_is_nearly_lossless() {
        let img = synth_image(SynthKind::Noise(1), 64, 64).unwrap();
        let c = cfg("exact-dct", false).with_quant(QuantTable::uniform(1).unwrap());
        let (_, m) = compress_image(&img, &c).unwrap();
        assert!(m.psnr_db >= 55.0, "{}", m.psnr_db);
    }

    #[test]
    fn all_zero_image() {
        let img = synth_image(SynthKind::Flat(0), 16, 16).unwrap();
        let (out, m) = compress_image(&img, &cfg("modified-rdct", false)).unwrap();
        assert_eq!(out, img);
        assert_eq!(m.nz_pct, 100.0);
        assert_eq!(m.psnr_db, f64::INFINITY);
        assert_eq!(m.energy_compaction, None);
    }

    #[test]
    fn rejects_low_depth_images() {
        let img = GrayImage::with_maxval(8, 8, 15, vec![0; 64]).unwrap();
        assert!(matches!(compress_image(&img, &cfg("rdct", false)), Err(Error::UnsupportedDepth(15))));
    }

    #[test]
    fn odd_sizes_are_padded() {
        let img = synth_image(SynthKind::Gradient, 13, 10).unwrap();
        let (out, m) = compress_image(&img, &cfg("modified-rdct", false)).unwrap();
        assert_eq!((out.width(), out.height()), (13, 10));
        assert!(m.psnr_db > 25.0);
    }

    #[test]
    fn level_shift_round_trips_flat_blocks() {
        let img = synth_image(SynthKind::Flat(200), 16, 16).unwrap();
        let c = cfg("exact-dct", false).with_level_shift(true);
        let (out, _) = compress_image(&img, &c).unwrap();
        assert!(out.samples().iter().all(|&v| v.abs_diff(200) <= 1));
    }

    #[test]
    fn corpus_average_of_one_image() {
        let img = synth_image(SynthKind::Noise(3), 32, 32).unwrap();
        let configs = [cfg("modified-rdct", false), cfg("modified-rdct", true)];
        let rep = corpus_average(&[("noise".into(), img.clone())], &configs).unwrap();
        for (avg, c) in rep.averages.iter().zip(&configs) {
            let (_, m) = compress_image(&img, c).unwrap();
            assert_eq!(avg.metrics, m);
            assert_eq!(avg.image, MEAN_LABEL);
        }
        assert!(matches!(corpus_average(&[], &configs), Err(Error::EmptyCorpus)));
    }

    #[test]
    fn csv_formatting() {
        let row = MetricsRow {
            transform: "modified-rdct",
            pruned: true,
            image: "x".into(),
            metrics: ImageMetrics { psnr_db: 30.0, nz_pct: 86.75, energy_compaction: None },
        };
        assert_eq!(metrics_csv_line(&row), "modified-rdct,true,x,30.0000,86.7500,nan");
        assert_eq!(fixed4(f64::INFINITY), "inf");
        assert!(metrics_csv([&row]).starts_with(METRICS_CSV_HEADER));
    }
}
