"""Figure rendering writes non-empty image files."""

from oakit import make_bound_report, verify_strength2, write_oa
from oakit.cli import main
from oakit.figures import save_bounds_figure, save_verification_figure


def test_verification_figure(tmp_path, figure1):
    path = tmp_path / "fig1.png"
    save_verification_figure(figure1, verify_strength2(figure1), path)
    assert path.exists() and path.stat().st_size > 1000


def test_bounds_figure(tmp_path):
    path = tmp_path / "bounds.png"
    save_bounds_figure(make_bound_report(13, 2, 7), path)
    assert path.exists() and path.stat().st_size > 1000


def test_cli_verify_plot(tmp_path, figure1):
    oa_path = tmp_path / "oa.txt"
    write_oa(figure1, oa_path)
    png = tmp_path / "report.png"
    assert main(["verify", str(oa_path), "--plot", str(png)]) == 0
    assert png.exists() and png.stat().st_size > 1000


def test_cli_bounds_plot(tmp_path):
    png = tmp_path / "bounds.png"
    assert main(["bounds", "-k", "5", "-n", "2", "-l", "3",
                 "--plot", str(png)]) == 0
    assert png.exists() and png.stat().st_size > 1000
