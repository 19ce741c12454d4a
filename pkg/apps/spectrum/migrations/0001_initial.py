# Generated by Django 4.2.20 on 2026-10-19 09:12

import django.core.validators
from django.db import migrations, models
import django.db.models.deletion


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='SpectrumRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('n', models.PositiveIntegerField(validators=[django.core.validators.MinValueValidator(4)])),
                ('genus', models.PositiveIntegerField()),
                ('stratum', models.CharField(max_length=20)),
                ('bound', models.CharField(default='2', max_length=50)),
                ('max_depth', models.PositiveIntegerField()),
                ('complete', models.BooleanField(default=True)),
                ('symmetric_only', models.BooleanField(default=False)),
                ('nodes', models.PositiveBigIntegerField(default=0)),
                ('pruned', models.PositiveBigIntegerField(default=0)),
                ('emitted', models.PositiveIntegerField(default=0)),
                ('elapsed', models.FloatField(default=0)),
                ('warnings', models.JSONField(blank=True, default=list)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'verbose_name': 'Spectrum run',
                'verbose_name_plural': 'Spectrum runs',
                'ordering': ['n', '-created_at'],
            },
        ),
        migrations.CreateModel(
            name='SpectrumEntry',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('rank', models.PositiveIntegerField()),
                ('coefficients', models.JSONField(help_text='Defining polynomial, ascending')),
                ('root', models.CharField(max_length=40)),
                ('root_lo', models.TextField()),
                ('root_hi', models.TextField()),
                ('log_root', models.CharField(max_length=40)),
                ('k', models.PositiveIntegerField()),
                ('word', models.CharField(max_length=500)),
                ('digest', models.CharField(max_length=40)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='entries', to='spectrum.spectrumrun')),
            ],
            options={
                'verbose_name': 'Spectrum entry',
                'verbose_name_plural': 'Spectrum entries',
                'ordering': ['run', 'rank'],
                'unique_together': {('run', 'rank')},
            },
        ),
    ]
