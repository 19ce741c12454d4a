from django.db import models, transaction
from django.core.validators import MinValueValidator

from .census import genus as genus_of, stratum as stratum_of


class SpectrumRun(models.Model):
    """
    One census: every distinct dilatation below ``bound`` for alphabet size n
    """
    n = models.PositiveIntegerField(validators=[MinValueValidator(4)])
    genus = models.PositiveIntegerField()
    stratum = models.CharField(max_length=20)
    bound = models.CharField(max_length=50, default='2')
    max_depth = models.PositiveIntegerField()
    complete = models.BooleanField(default=True)
    symmetric_only = models.BooleanField(default=False)
    nodes = models.PositiveBigIntegerField(default=0)
    pruned = models.PositiveBigIntegerField(default=0)
    emitted = models.PositiveIntegerField(default=0)
    elapsed = models.FloatField(default=0)
    warnings = models.JSONField(default=list, blank=True)
    created_at = models.DateTimeField(auto_now_add=True)

    def __str__(self):
        status = '' if self.complete else ' (incomplete)'
        return f"n={self.n} {self.stratum} < {self.bound}: {self.entries.count()} lengths{status}"

    @classmethod
    def from_result(cls, census, width=None):
        """Persist a census.Spectrum with its entries"""
        config = census.search.config
        stats = census.search.stats
        with transaction.atomic():
            run = cls.objects.create(
                n=config.n,
                genus=genus_of(config.n),
                stratum=stratum_of(config.n),
                bound=str(config.bound),
                max_depth=config.depth,
                complete=census.complete,
                symmetric_only=config.symmetric_only,
                nodes=stats.nodes,
                pruned=stats.pruned,
                emitted=stats.emitted,
                elapsed=census.search.elapsed,
                warnings=list(census.warnings),
            )
            rows = []
            for entry in census.entries:
                data = entry.as_dict(width) if width is not None else entry.as_dict()
                rows.append(SpectrumEntry(
                    run=run,
                    rank=entry.rank,
                    coefficients=data['coefficients'],
                    root=data['root'],
                    root_lo=data['root_lo'],
                    root_hi=data['root_hi'],
                    log_root=data['log_root'],
                    k=entry.k,
                    word=entry.word,
                    digest=entry.digest,
                ))
            SpectrumEntry.objects.bulk_create(rows)
        return run

    class Meta:
        ordering = ['n', '-created_at']
        verbose_name = "Spectrum run"
        verbose_name_plural = "Spectrum runs"


class SpectrumEntry(models.Model):
    """
    One distinct dilatation of a run, with a representative path
    """
    run = models.ForeignKey(
        SpectrumRun,
        on_delete=models.CASCADE,
        related_name='entries'
    )
    rank = models.PositiveIntegerField()
    coefficients = models.JSONField(help_text="Defining polynomial, ascending")
    root = models.CharField(max_length=40)
    root_lo = models.TextField()
    root_hi = models.TextField()
    log_root = models.CharField(max_length=40)
    k = models.PositiveIntegerField()
    word = models.CharField(max_length=500)
    digest = models.CharField(max_length=40)

    def __str__(self):
        return f"#{self.rank} {self.root} (k={self.k}: {self.word})"

    class Meta:
        ordering = ['run', 'rank']
        unique_together = ['run', 'rank']
        verbose_name = "Spectrum entry"
        verbose_name_plural = "Spectrum entries"
